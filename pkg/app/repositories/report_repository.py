import logging
import os
from typing import Optional

from app import config


def save_report(content: str, filename: str,
                directory: Optional[str] = None) -> str:
    """
    Write a rendered report to a flat file.

    This function writes the report under ``directory`` (REPORT_DIR by
    default) unless ``filename`` is already a path with a directory part,
    creating missing directories. If writing fails, it raises an OSError
    whose payload names the file.

    :param content: The rendered report.
    :param filename: The file name or path.
    :param directory: The directory for bare file names.
    :returns: The path that was written.
    :raises OSError: If the file could not be written.
    """

    path = filename if os.path.dirname(filename) else os.path.join(
            directory or config.REPORT_DIR, filename)
    try:
        os.makedirs(os.path.dirname(path) or '.', exist_ok=True)
        with open(path, 'w', encoding='utf-8') as report_file:
            report_file.write(content)
    except OSError as exception:
        logging.debug(str(exception), exc_info=True)
        raise OSError({'error': 'COULD_NOT_WRITE_REPORT', 'path': path})

    logging.info(f'Report written to {path}.')
    return path


def load_report(path: str) -> str:
    """
    Read a previously written report.

    :param path: The report path.
    :returns: The file content.
    :raises OSError: If the file could not be read.
    """

    try:
        with open(path, encoding='utf-8') as report_file:
            return report_file.read()
    except OSError as exception:
        logging.debug(str(exception), exc_info=True)
        raise OSError({'error': 'COULD_NOT_READ_REPORT', 'path': path})
