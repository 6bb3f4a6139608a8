"""
Graph Sources

GraphSource implementations: edge-list files on disk and in-memory edge lists.
"""

from pathlib import Path
import logging

from antidim.model.errors import DomainError

logger = logging.getLogger(__name__)


class EdgeListFileSource:
    """
    Reads an edge-list file.

    Parameters:
        path: File to read; the source name is the file stem
    """

    def __init__(self, path: Path):
        self.path = Path(path)
        self.name = self.path.stem

    def read(self) -> bytes:
        if not self.path.is_file():
            raise DomainError(f"edge-list file not found: {self.path}")
        data = self.path.read_bytes()
        logger.info("read %d bytes from %s", len(data), self.path)
        return data


class InMemorySource:
    """Edge-list text held in memory, for bundled graphs and tests."""

    def __init__(self, name: str, text: str):
        self.name = name
        self.text = text

    def read(self) -> bytes:
        return self.text.encode("utf-8")
