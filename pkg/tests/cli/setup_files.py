"""Helpers for loading and writing configuration documents in tests"""

from typing import Any
import json
import os


def setup_json(file: str) -> Any:
    """Load a configuration document stored next to these tests.

    :param str file: The name of the file containing the document.
    :returns Any: The decoded document.
    """
    record = os.path.join(os.path.dirname(__file__), file)
    with open(record, encoding='UTF-8') as data_f:
        return json.load(data_f)


def write_json(doc: Any, directory: str, name: str = 'config.json') -> str:
    """Write a document to a scratch directory.

    :param Any doc: The document.
    :param str directory: The directory.
    :param str name: The file name.
    :returns str: The path of the written file.
    """
    path = os.path.join(directory, name)
    with open(path, 'w', encoding='UTF-8') as out:
        json.dump(doc, out)
    return path
