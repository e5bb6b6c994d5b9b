"""
Corpus domain types
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, List, Optional

from utils.errors import ConfigurationError


class Property(str, Enum):
    """Knowledge-base properties with multiple values per subject"""
    PROFESSION = "profession"
    NATIONALITY = "nationality"

    @classmethod
    def parse(cls, name: Any) -> "Property":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).strip().lower())
        except ValueError:
            known = ", ".join(p.value for p in cls)
            raise ConfigurationError(f"unknown property '{name}' (expected one of: {known})") from None


@dataclass(frozen=True)
class Triple:
    """One (subject, property, value) assertion"""
    subject: str
    property: Property
    value: str


@dataclass(frozen=True)
class PersonDoc:
    """A subject's preprocessed tokens, in original sentence order"""
    subject: str
    tokens: tuple
    source_sentence_count: int = 0

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass
class ValueGroup:
    """Single-valued subjects sharing one value, plus enrichment pseudo-docs"""
    value: str
    property: Property
    member_docs: List[PersonDoc] = field(default_factory=list)
    enriched: bool = False
    original_size: Optional[int] = None
    truncated: bool = False
    pages_added: int = 0
    warning: Optional[str] = None

    def __len__(self) -> int:
        return len(self.member_docs)

    @property
    def subjects(self) -> List[str]:
        return [doc.subject for doc in self.member_docs]
