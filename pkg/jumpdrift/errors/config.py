"""
Defines configuration error classes for jumpdrift.
"""

import json


class ImproperConfigurationError(Exception):
    """Defines an error that is raised when improper configuration is detected."""


class ConfigFileError(Exception):
    """Represents a malformed configuration document.

    The ``field`` names the offending entry as a dotted path
    (``problem.mu.pieces[1].value``) or, for unparseable JSON, as a
    ``line L, column C`` location.
    """
    def __init__(self, field: str, message: str):
        """Create a configuration file error.

        :param str field: The dotted path or location of the bad entry.
        :param str message: What is wrong with it.
        """
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message

    @classmethod
    def from_decode_error(cls, error: json.JSONDecodeError) -> 'ConfigFileError':
        """Create a configuration error from a JSON parse failure.

        :param json.JSONDecodeError error: The error raised by the JSON parser.
        :returns ConfigFileError: An error locating the failure by line and column.
        """
        return cls(f"line {error.lineno}, column {error.colno}", error.msg)
