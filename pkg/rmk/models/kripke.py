"""
Kripke Models - Finite models (W, R, {P_k}) as pydantic schemas
"""
import hashlib
import json
from typing import Any, Iterator

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator


def letter_key(k: int) -> str:
    return f"p{k}"


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class KripkeModel(BaseModel):
    """
    A finite Kripke model. Worlds are 0..n_worlds-1; ``edges`` is R and
    ``valuation`` maps a letter index to its truth set P_k. Letters missing
    from the valuation have an empty truth set.
    """
    model_config = ConfigDict(frozen=True, populate_by_name=True, extra="forbid")

    n_worlds: int = Field(alias="worlds", ge=1)
    edges: frozenset[tuple[int, int]] = frozenset()
    valuation: dict[int, frozenset[int]] = Field(default_factory=dict)

    _succ: list[int] = PrivateAttr(default_factory=list)
    _letter_masks: dict[int, int] = PrivateAttr(default_factory=dict)
    _signature: list[int] = PrivateAttr(default_factory=list)

    @field_validator("valuation", mode="before")
    @classmethod
    def _letter_keys(cls, value: Any) -> Any:
        if not isinstance(value, dict):
            return value
        parsed = {}
        for key, members in value.items():
            if isinstance(key, int):
                index = key
            elif isinstance(key, str) and key.startswith("p") and key[1:].isdigit():
                index = int(key[1:])
            else:
                raise ValueError(f"valuation key {key!r} is not a letter p<N>")
            parsed[index] = members
        return parsed

    @model_validator(mode="after")
    def _check_world_ids(self) -> "KripkeModel":
        n = self.n_worlds
        for a, b in self.edges:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"dangling world id in edge [{a}, {b}] (worlds: {n})")
        for k, members in self.valuation.items():
            for w in members:
                if not 0 <= w < n:
                    raise ValueError(f"dangling world id {w} in valuation of p{k} (worlds: {n})")
        # Indexes are built only once every id is in range
        self._index()
        return self

    def _index(self) -> None:
        n = self.n_worlds
        succ = [0] * n
        for a, b in self.edges:
            succ[a] |= 1 << b
        self._succ = succ
        self._letter_masks = {k: sum(1 << w for w in members) for k, members in self.valuation.items()}
        signature = [0] * n
        for k, mask in self._letter_masks.items():
            for w in bits(mask):
                signature[w] |= 1 << k
        self._signature = signature

    @classmethod
    def from_masks(cls, n_worlds: int, successors: list[int], letters: dict[int, int]) -> "KripkeModel":
        """Trusted fast constructor from successor and truth-set bitmasks (no validation)"""
        edges = frozenset((a, b) for a in range(n_worlds) for b in bits(successors[a]))
        valuation = {k: frozenset(bits(mask)) for k, mask in letters.items()}
        model = cls.model_construct(n_worlds=n_worlds, edges=edges, valuation=valuation)
        model._index()
        return model

    # Views used by the evaluators

    @property
    def full_mask(self) -> int:
        return (1 << self.n_worlds) - 1

    @property
    def successors(self) -> list[int]:
        return self._succ

    @property
    def letter_masks(self) -> dict[int, int]:
        return self._letter_masks

    @property
    def signatures(self) -> list[int]:
        """Per world, the bitmask of letters true there"""
        return self._signature

    def worlds(self) -> range:
        return range(self.n_worlds)

    def letters(self) -> list[int]:
        return sorted(self.valuation)

    def letter_mask(self, k: int) -> int:
        return self._letter_masks.get(k, 0)

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self._succ[a] >> b & 1)

    # Persistence

    def to_document(self) -> dict:
        return {
            "worlds": self.n_worlds,
            "edges": [list(e) for e in sorted(self.edges)],
            "valuation": {letter_key(k): sorted(self.valuation[k]) for k in sorted(self.valuation)},
        }

    def fingerprint(self) -> str:
        """Short content hash used to tag closure families and reports"""
        canonical = json.dumps(self.to_document(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]


class UnionInjections(BaseModel):
    """The maps ι_left, ι_right of a disjoint union, as index tables"""
    left: list[int]
    right: list[int]
