"""Non-crossing partitions with singleton/pair blocks, one- and two-color,
including the depth-restricted families used by the moment engines.

Partitions of {1..n} are stored canonically: blocks sorted by minimum
element.  Colors are 'b' (blue) and 'r' (red).  All counts are exact
python integers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

BLUE = "b"
RED = "r"


@dataclass(frozen=True)
class Partition12:
    """A non-crossing partition of {1..n} into singletons and pairs."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = set()
        for blk in self.blocks:
            if len(blk) not in (1, 2) or list(blk) != sorted(blk):
                raise ValueError(f"bad block {blk}")
            seen.update(blk)
        if seen != set(range(1, self.n + 1)):
            raise ValueError("blocks do not cover {1..n}")
        if list(self.blocks) != sorted(self.blocks, key=lambda b: b[0]):
            raise ValueError("blocks not in canonical order")
        for (a, *restb), (c, *restd) in itertools.combinations(self.blocks, 2):
            if restb and restd:
                b, d = restb[0], restd[0]
                if a < c < b < d or c < a < d < b:
                    raise ValueError(f"crossing blocks ({a},{b}), ({c},{d})")

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(blk for blk in self.blocks if len(blk) == 2)

    def __str__(self):
        return " ".join("(" + ",".join(map(str, blk)) + ")" for blk in self.blocks)


@dataclass(frozen=True)
class ColoredPartition:
    """A Partition12 whose blocks each carry one of two colors."""

    base: Partition12
    color: tuple[str, ...]

    def __post_init__(self):
        if len(self.color) != len(self.base.blocks):
            raise ValueError("one color per block required")
        if any(c not in (BLUE, RED) for c in self.color):
            raise ValueError("colors must be 'b' or 'r'")

    def element_color(self, i: int) -> str:
        for blk, c in zip(self.base.blocks, self.color):
            if i in blk:
                return c
        raise ValueError(f"{i} not in partition")

    def __str__(self):
        return " ".join(
            "(" + ",".join(map(str, blk)) + "):" + c
            for blk, c in zip(self.base.blocks, self.color)
        )


def _nc12_blocks(elems: tuple[int, ...], pairs_only: bool) -> Iterator[list]:
    """All non-crossing singleton/pair partitions of an ordered tuple."""
    if not elems:
        yield []
        return
    first, rest = elems[0], elems[1:]
    if not pairs_only:
        for tail in _nc12_blocks(rest, pairs_only):
            yield [(first,)] + tail
    for j, partner in enumerate(rest):
        inside, outside = rest[:j], rest[j + 1 :]
        if pairs_only and (len(inside) % 2 or len(outside) % 2):
            continue
        for pin in _nc12_blocks(inside, pairs_only):
            for pout in _nc12_blocks(outside, pairs_only):
                yield [(first, partner)] + pin + pout


def enumerate_nc12(n: int, pairs_only: bool = False) -> Iterator[Partition12]:
    """Yield NC_{1,2}(n) (or NC_2(n) if pairs_only), canonical order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if pairs_only and n % 2:
        return
    for blocks in _nc12_blocks(tuple(range(1, n + 1)), pairs_only):
        yield Partition12(n, tuple(sorted(blocks, key=lambda b: b[0])))


def block_depths(p: Partition12 | ColoredPartition) -> tuple[int, ...]:
    """Absolute depth per block: 1 + number of pair blocks strictly covering it."""
    base = p.base if isinstance(p, ColoredPartition) else p
    pairs = base.pairs
    out = []
    for blk in base.blocks:
        lo, hi = blk[0], blk[-1]
        out.append(1 + sum(1 for (a, b) in pairs if a < lo and hi < b))
    return tuple(out)


def relative_depths(p: ColoredPartition) -> tuple[int, ...]:
    """Per-block depth with the two-color reset rule: count same-color pair
    covers walking outward, stopping at the first opposite-color cover."""
    base = p.base
    pair_colors = [
        (blk[0], blk[1], c)
        for blk, c in zip(base.blocks, p.color)
        if len(blk) == 2
    ]
    out = []
    for blk, c in zip(base.blocks, p.color):
        lo, hi = blk[0], blk[-1]
        covers = [(a, b, cc) for (a, b, cc) in pair_colors if a < lo and hi < b]
        covers.sort(key=lambda t: -t[0])  # innermost first
        depth = 1
        for _, _, cc in covers:
            if cc != c:
                break
            depth += 1
        out.append(depth)
    return tuple(out)


def enumerate_nc12_depth(n: int, k: int, pairs_only: bool = False) -> Iterator[Partition12]:
    """Yield NC_{1,2}^k(n): partitions whose pair blocks all have depth < k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    for p in enumerate_nc12(n, pairs_only):
        depths = block_depths(p)
        if all(
            d < k for blk, d in zip(p.blocks, depths) if len(blk) == 2
        ):
            yield p


def _colorings(p: Partition12) -> Iterator[ColoredPartition]:
    for colors in itertools.product((BLUE, RED), repeat=len(p.blocks)):
        yield ColoredPartition(p, colors)


def enumerate_tcnc(n: int, pairs_only: bool = False) -> Iterator[ColoredPartition]:
    """Yield TCNC_{1,2}(n) (or TCNC_2(n) if pairs_only)."""
    for p in enumerate_nc12(n, pairs_only):
        yield from _colorings(p)


def tcnc_depth_ok(cp: ColoredPartition, k: int, l: int) -> bool:
    """Blue pairs have relative depth < k, red pairs < l.

    Equivalent to the chain condition: any same-color nested chain of k
    (resp. l) pairs is split by an opposite-color pair between its
    outermost and innermost elements.
    """
    rel = relative_depths(cp)
    bound = {BLUE: k, RED: l}
    return all(
        d < bound[c]
        for blk, c, d in zip(cp.base.blocks, cp.color, rel)
        if len(blk) == 2
    )


def enumerate_tcnc_depth(
    n: int, k: int, l: int, pairs_only: bool = False
) -> Iterator[ColoredPartition]:
    """Yield TCNC_{1,2}^{k,l}(n) (or TCNC_2^{k,l}(n) if pairs_only)."""
    if k < 1 or l < 1:
        raise ValueError("depth bounds must be >= 1")
    for cp in enumerate_tcnc(n, pairs_only):
        if tcnc_depth_ok(cp, k, l):
            yield cp


def odd_compositions(p: int, q: int) -> Iterator[tuple[int, ...]]:
    """All ordered q-tuples of odd positive integers summing to p."""
    if q == 0:
        if p == 0:
            yield ()
        return
    if p < q or (p - q) % 2:
        return
    for first in range(1, p - q + 2, 2):
        for rest in odd_compositions(p - first, q - 1):
            yield (first,) + rest


FAMILIES = ("NC12", "NC2", "NC12^k", "TCNC12", "TCNC2", "TCNC^{k,l}")


def count_family(family: str, n: int, k: Optional[int] = None, l: Optional[int] = None) -> int:
    """Exact size of a partition family, by enumeration."""
    if family == "NC12":
        return sum(1 for _ in enumerate_nc12(n))
    if family == "NC2":
        return sum(1 for _ in enumerate_nc12(n, pairs_only=True))
    if family == "NC12^k":
        return sum(1 for _ in enumerate_nc12_depth(n, k))
    if family == "NC2^k":
        return sum(1 for _ in enumerate_nc12_depth(n, k, pairs_only=True))
    if family == "TCNC12":
        return sum(1 for _ in enumerate_tcnc(n))
    if family == "TCNC2":
        return sum(1 for _ in enumerate_tcnc(n, pairs_only=True))
    if family == "TCNC^{k,l}":
        return sum(1 for _ in enumerate_tcnc_depth(n, k, l))
    if family == "TCNC2^{k,l}":
        return sum(1 for _ in enumerate_tcnc_depth(n, k, l, pairs_only=True))
    raise ValueError(f"unknown family {family!r}")
