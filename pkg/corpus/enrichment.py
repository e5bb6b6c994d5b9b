"""
Enrichment clients: retrieve extra pages for underrepresented values
"""
import re
from abc import ABC, abstractmethod
from pathlib import Path
from typing import List, Union

from utils.errors import EnrichmentError
from utils.logger import setup_logger

logger = setup_logger("enrichment")

_BLANK_LINES = re.compile(r"\n\s*\n")


class EnrichmentClient(ABC):
    """Search backend returning the most relevant pages for a value"""

    @abstractmethod
    def search(self, value: str, limit: int) -> List[str]:
        """
        Retrieve up to `limit` page texts for `value`, most relevant first

        Raises:
            EnrichmentError: the backend could not be queried
        """
        pass


class NullEnrichmentClient(EnrichmentClient):
    """No-op client; groups below the floor stay as they are"""

    def search(self, value: str, limit: int) -> List[str]:
        return []


class FixtureEnrichmentClient(EnrichmentClient):
    """
    Offline client over a directory of `<value>.txt` files

    Each file holds retrieved pages separated by blank lines, in
    relevance order. A value without a file yields no pages.
    """

    def __init__(self, directory: Union[str, Path]):
        self.directory = Path(directory)
        if not self.directory.is_dir():
            raise EnrichmentError(f"enrichment directory not found: {self.directory}")

    def _page_file(self, value: str) -> Path:
        safe = value.replace('/', '_').replace('\\', '_')
        return self.directory / f"{safe}.txt"

    def search(self, value: str, limit: int) -> List[str]:
        path = self._page_file(value)
        if not path.exists():
            logger.debug(f"No enrichment pages for '{value}' ({path})")
            return []
        try:
            text = path.read_text(encoding='utf-8')
        except (OSError, UnicodeDecodeError) as e:
            raise EnrichmentError(f"cannot read {path}: {e}") from e
        text = text.replace('\r\n', '\n')
        pages = [block.strip() for block in _BLANK_LINES.split(text)]
        pages = [p for p in pages if p]
        return pages[:limit]
