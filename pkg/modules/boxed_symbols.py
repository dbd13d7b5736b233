# modules/boxed_symbols.py
"""
Boxed symbols: centrally symmetric equidistant subsets of the main diagonal.

A block S(M, L) stands for the M integers (1-M)L, (3-M)L, ..., (M-1)L.
A Decomposition is a disjoint cover of the main diagonal {1-N, 3-N, ..., N-1}
by such blocks, kept in canonical order (ascending L, then descending M).
"""

import re
from dataclasses import dataclass, field
from typing import Iterable, List, Tuple

from .errors import InvalidBlockError, InvalidDimensionError

_BLOCK_PATTERN = re.compile(r"^\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$")


def _require_dimension(n) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise InvalidDimensionError(f"Dimension must be an integer, got {n!r}.")
    if n < 2:
        raise InvalidDimensionError(f"Dimension must be at least 2, got {n}.")
    return n


def main_diagonal(n: int) -> List[int]:
    """
    The equidistant, traceless main diagonal of the N x N harmonic Hamiltonian.

    :param n: Dimension N >= 2.
    :return: [1-N, 3-N, ..., N-1].
    """
    _require_dimension(n)
    return list(range(1 - n, n, 2))


@dataclass(frozen=True, order=False)
class BlockSpec:
    """One boxed symbol S(M, L): M levels with spacing 2L, symmetric about zero."""

    size: int
    scale: int

    def __post_init__(self):
        for name, value in (("size", self.size), ("scale", self.scale)):
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidBlockError(f"Block {name} must be an integer, got {value!r}.")
        if self.size < 2:
            raise InvalidBlockError(f"Block size must be at least 2 (singlets are excluded), got {self.size}.")
        if self.scale < 1:
            raise InvalidBlockError(f"Block scale must be positive, got {self.scale}.")

    @property
    def values(self) -> List[int]:
        return [(2 * m + 1 - self.size) * self.scale for m in range(self.size)]

    @property
    def half_values(self) -> List[int]:
        """Non-negative members, ascending."""
        return [v for v in self.values if v >= 0]

    @property
    def radius(self) -> int:
        return (self.size - 1) * self.scale

    @property
    def canonical_key(self) -> Tuple[int, int]:
        return (self.scale, -self.size)

    @property
    def label(self) -> str:
        return f"B({self.size},{self.scale})"

    def render(self) -> str:
        return "[" + ",".join(str(v) for v in self.values) + "]"

    def __str__(self) -> str:
        return self.label


def block_values(block: BlockSpec) -> List[int]:
    return block.values


def half_spectrum(block: BlockSpec) -> List[int]:
    """Non-negative members of the block, the half-set used by the half-diagonal search."""
    return block.half_values


@dataclass(frozen=True)
class Decomposition:
    """
    A disjoint cover of main_diagonal(n) by boxed symbols.

    The block tuple is canonicalized on construction, so two decompositions
    of the same cover compare equal regardless of the order they were given in.
    """

    n: int
    blocks: Tuple[BlockSpec, ...] = field(default_factory=tuple)

    def __post_init__(self):
        _require_dimension(self.n)
        blocks = tuple(sorted(self.blocks, key=lambda b: b.canonical_key))
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            raise InvalidBlockError("A decomposition needs at least one block.")

        covered = sorted(v for block in blocks for v in block.values)
        if covered != main_diagonal(self.n):
            raise InvalidBlockError(
                f"Blocks {[b.label for b in blocks]} do not cover the N={self.n} diagonal exactly once."
            )

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def partition(self) -> Tuple[int, ...]:
        """Block sizes in descending order: the partition of N into chain lengths."""
        return tuple(sorted((b.size for b in self.blocks), reverse=True))

    @property
    def canonical_key(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(b.canonical_key for b in self.blocks)

    @property
    def offsets(self) -> List[int]:
        """Distinct positive coupling offsets L_k, ascending."""
        return sorted({b.scale for b in self.blocks})

    def __str__(self) -> str:
        return render_decomposition(self)


def decomposition_from_blocks(n: int, blocks: Iterable[BlockSpec]) -> Decomposition:
    return Decomposition(n=n, blocks=tuple(blocks))


def parse_blocks(text: str) -> List[BlockSpec]:
    """
    Parse an explicit block list such as "(3,2);(4,2)".

    :param text: Semicolon-separated (M,L) pairs.
    :return: BlockSpecs in the order given.
    """
    if text is None or not text.strip():
        raise InvalidBlockError("Empty block list.")
    blocks = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        match = _BLOCK_PATTERN.match(chunk)
        if match is None:
            raise InvalidBlockError(f"Cannot parse block {chunk!r}; expected '(M,L)'.")
        blocks.append(BlockSpec(int(match.group(1)), int(match.group(2))))
    if not blocks:
        raise InvalidBlockError("Empty block list.")
    return blocks


def format_blocks(decomposition: Decomposition) -> str:
    """Inverse of parse_blocks."""
    return ";".join(f"({b.size},{b.scale})" for b in decomposition.blocks)


def render_decomposition(decomposition: Decomposition) -> str:
    return " ⊕ ".join(b.render() for b in decomposition.blocks)


def appendix_label(decomposition: Decomposition) -> str:
    """
    Half-spectrum notation: B(j,k) on {1,3,5,...} for even N;
    C(j,k) and G(q,r) on the halved lattice {0,1,2,...} for odd N.
    """
    labels = []
    for b in decomposition.blocks:
        if decomposition.n % 2 == 0:
            labels.append(f"B({b.size // 2},{(b.scale + 1) // 2})")
        elif b.size % 2 == 1:
            labels.append(f"C({(b.size - 1) // 2},{b.scale})")
        else:
            labels.append(f"G({b.size // 2},{b.scale // 2})")
    return " + ".join(labels)
