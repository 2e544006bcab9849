"""
Kripke Core - Loading, disjoint unions, seeded generation and enumeration
"""
import json
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Any, Iterator, Union

import structlog
from pydantic import ValidationError

from rmk.errors import ModelSchemaError
from rmk.models.kripke import KripkeModel, UnionInjections

logger = structlog.get_logger()

MASK64 = (1 << 64) - 1

# SplitMix64 constants; changing any of them changes every seeded trial.
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_MUL_1 = 0xBF58476D1CE4E5B9
MIX_MUL_2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """The SplitMix64 finalizer"""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX_MUL_1) & MASK64
    z = ((z ^ (z >> 27)) * MIX_MUL_2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """
    Pinned 64-bit generator so seeded trials replay bit-exactly.

    next_u64: state += GOLDEN_GAMMA; return mix64(state)
    below(n): (next_u64() * n) >> 64
    chance(p): next_u64() < floor(p * 2**64)
    derive(i): SplitMix64(mix64(seed + (i + 1) * GOLDEN_GAMMA))
    """

    def __init__(self, seed: int):
        self.seed = seed & MASK64
        self.state = self.seed

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return (self.next_u64() * n) >> 64

    def chance(self, p: Union[float, Fraction]) -> bool:
        return self.next_u64() < probability_threshold(p)

    def choice(self, items: list) -> Any:
        return items[self.below(len(items))]

    def derive(self, index: int) -> "SplitMix64":
        return SplitMix64(mix64(self.seed + (index + 1) * GOLDEN_GAMMA))


def probability_threshold(p: Union[float, Fraction]) -> int:
    q = Fraction(p)
    if not 0 <= q <= 1:
        raise ValueError(f"probability {p} outside [0, 1]")
    return int(q * (1 << 64))


def load_model(document: Union[dict, str]) -> KripkeModel:
    """Validate a model document (dict or JSON text)"""
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as e:
            raise ModelSchemaError(f"model is not valid JSON: {e}") from e
    try:
        model = KripkeModel.model_validate(document)
    except ValidationError as e:
        raise ModelSchemaError(str(e)) from e
    logger.debug("model_loaded", worlds=model.n_worlds, edges=len(model.edges))
    return model


def load_model_file(path: Union[str, Path]) -> KripkeModel:
    return load_model(Path(path).read_text())


def dump_model(model: KripkeModel) -> str:
    return json.dumps(model.to_document(), sort_keys=True)


def disjoint_union(m1: KripkeModel, m2: KripkeModel) -> tuple[KripkeModel, UnionInjections]:
    """Left block first: worlds of m1 keep their ids, worlds of m2 are shifted by |W1|"""
    shift = m1.n_worlds
    succ = list(m1.successors) + [mask << shift for mask in m2.successors]
    letters: dict[int, int] = {}
    for k in sorted(set(m1.valuation) | set(m2.valuation)):
        letters[k] = m1.letter_mask(k) | (m2.letter_mask(k) << shift)
    union = KripkeModel.from_masks(m1.n_worlds + m2.n_worlds, succ, letters)
    injections = UnionInjections(
        left=list(range(m1.n_worlds)),
        right=[shift + w for w in range(m2.n_worlds)],
    )
    return union, injections


def random_model(
    n_worlds: int,
    n_letters: int,
    edge_prob: Union[float, Fraction],
    letter_prob: Union[float, Fraction],
    seed: int,
) -> KripkeModel:
    """
    Deterministic random model. Draw order: every ordered pair (a, b)
    row-major for R, then for each letter k ascending every world ascending.
    All n_letters letters are listed in the valuation, possibly empty.
    """
    if n_worlds < 1:
        raise ValueError("a model needs at least one world")
    rng = SplitMix64(seed)
    return random_model_from(rng, n_worlds, n_letters, edge_prob, letter_prob)


def random_model_from(
    rng: SplitMix64,
    n_worlds: int,
    n_letters: int,
    edge_prob: Union[float, Fraction],
    letter_prob: Union[float, Fraction],
) -> KripkeModel:
    edge_cut = probability_threshold(edge_prob)
    letter_cut = probability_threshold(letter_prob)
    succ = [0] * n_worlds
    for a in range(n_worlds):
        for b in range(n_worlds):
            if rng.next_u64() < edge_cut:
                succ[a] |= 1 << b
    letters = {}
    for k in range(n_letters):
        mask = 0
        for w in range(n_worlds):
            if rng.next_u64() < letter_cut:
                mask |= 1 << w
        letters[k] = mask
    return KripkeModel.from_masks(n_worlds, succ, letters)


def enumerate_frames(n_worlds: int, n_letters: int) -> Iterator[tuple[list[int], tuple[int, ...]]]:
    """
    Every (successor masks, letter masks) over n_worlds worlds, edge sets
    outermost. Edge set number e puts bit (a * n_worlds + b) of e on (a, b).
    """
    cells = n_worlds * n_worlds
    row = (1 << n_worlds) - 1
    for edge_bits in range(1 << cells):
        succ = [(edge_bits >> (a * n_worlds)) & row for a in range(n_worlds)]
        for masks in product(range(row + 1), repeat=n_letters):
            yield succ, masks


def enumerate_models(n_worlds: int, letters: list[int]) -> Iterator[KripkeModel]:
    """Every model over n_worlds worlds and the given letters"""
    for succ, masks in enumerate_frames(n_worlds, len(letters)):
        yield KripkeModel.from_masks(n_worlds, succ, dict(zip(letters, masks)))


def model_to_dot(model: KripkeModel, relation: Union[set, frozenset, None] = None) -> str:
    """Graphviz rendering: R as solid arrows, an optional relation S as dashed arrows"""
    lines = ["digraph kripke {"]
    for w in model.worlds():
        true_letters = [f"p{k}" for k in model.letters() if model.letter_mask(k) >> w & 1]
        label = f"{w}" + (f"\\n{' '.join(true_letters)}" if true_letters else "")
        lines.append(f'  w{w} [label="{label}"];')
    for a, b in sorted(model.edges):
        lines.append(f"  w{a} -> w{b};")
    for a, b in sorted(relation or ()):
        lines.append(f'  w{a} -> w{b} [style=dashed, color=blue, label="S"];')
    lines.append("}")
    return "\n".join(lines)
