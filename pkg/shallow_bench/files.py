# -=- encoding: utf-8 -=-
#
# Copyright (c) 2024 Deeper Insights. Subject to the MIT license.

"""Some file utilities."""

from pathlib import Path
from typing import Sequence

CONFIG_DIR = ".shallow_bench"
HOME_DIR = Path.home() / CONFIG_DIR
CURRENT_DIR = Path().absolute()
PACKAGE_DIR = Path(__file__).parent
CATALOG_SEARCH_PATH = [CURRENT_DIR, HOME_DIR, PACKAGE_DIR]
# An ordered list of preferred catalog locations, the packaged default last


class FileLocator:
    """Finds files using path precedences."""

    def __init__(self, paths: Sequence[Path]) -> None:
        """
        Constructor.

        :param paths: ordered set of paths to search for files
        """
        self._paths = paths

    def find_file(self, file_name: str) -> Path:
        """
        Find a file in the list of paths. First found is returned.

        An absolute file name is returned as is when it exists.

        :param file_name: the name of the file to find
        :returns: the path to the found file
        :raises FileNotFoundError: if no path holds the file
        """
        candidate = Path(file_name)
        if candidate.is_absolute():
            if candidate.is_file():
                return candidate
        else:
            for path in self._paths:
                potential = path / file_name
                if potential.is_file():
                    return potential

        searched = [str(path) for path in self._paths]
        raise FileNotFoundError(f"{file_name} doesn't exist in {searched}")

    @staticmethod
    def find(paths: Sequence[Path], file_name: str) -> Path:
        """
        Static find method that takes paths and a file name.

        :param paths: list of paths
        :param file_name: the file name to find
        :returns: the found file path
        """
        return FileLocator(paths).find_file(file_name)
