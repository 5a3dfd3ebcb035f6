"""Residue-class bucketing of the lattice box 0 <= j_i <= D/a_i - 1.

An :class:`Instance` fixes a weight tuple ``a`` together with a common
multiple ``D`` of its entries.  The box of all integer tuples
``(j_1, ..., j_r)`` with ``0 <= j_i <= D/a_i - 1`` is partitioned into
*fibers*: one bucket per residue of ``a_1 j_1 + ... + a_r j_r`` modulo D.
Every counting formula downstream is a sum over one fiber or over the
whole box, so this module owns the enumeration and its size guard.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd, lcm, prod
from types import MappingProxyType
from typing import Iterator, Mapping, Sequence, Union

DEFAULT_MAX_BOX = 10**8

DChoice = Union[str, int]  # "lcm", "product", or an explicit common multiple

__all__ = [
    "DEFAULT_MAX_BOX",
    "DChoice",
    "BoxTooLargeError",
    "Instance",
    "Fiber",
    "FiberIndex",
    "make_instance",
    "build_fiber_index",
    "fiber",
    "iter_box_sums",
    "fiber_index_to_json",
    "fiber_index_from_json",
]


class BoxTooLargeError(Exception):
    """An enumeration would exceed the tuple-count guard."""

    def __init__(self, box_size: int, max_box: int):
        self.box_size = box_size
        self.max_box = max_box
        super().__init__(
            f"enumeration box holds {box_size} tuples, exceeding the guard of {max_box};"
            " raise max_box (or DENUMERANT_MAX_BOX for the CLI) to force it"
        )


@dataclass(frozen=True)
class Instance:
    """A weight tuple a = (a_1,...,a_r) with a chosen common multiple D."""

    a: tuple[int, ...]
    D: int
    g: int  # gcd of the a_i

    @property
    def r(self) -> int:
        return len(self.a)

    @property
    def axis_lengths(self) -> tuple[int, ...]:
        return tuple(self.D // ai for ai in self.a)

    @property
    def box_size(self) -> int:
        return prod(self.axis_lengths)


@dataclass(frozen=True)
class Fiber:
    """All box tuples whose weighted sum is congruent to `residue` mod D.

    `tuples` is sorted lexicographically; `sums[i]` is the weighted sum of
    `tuples[i]`.  Each sum is < r*D by construction.
    """

    residue: int
    tuples: tuple[tuple[int, ...], ...]
    sums: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.tuples)

    @property
    def is_empty(self) -> bool:
        return not self.tuples

    @property
    def min_sum(self) -> int | None:
        return min(self.sums) if self.sums else None


@dataclass(frozen=True)
class FiberIndex:
    """Complete bucketing of the box by residue; immutable once built.

    `fibers` maps residue -> Fiber for nonempty fibers only (exactly the
    residues divisible by gcd(a)).  Use :meth:`fiber` to query any residue.
    """

    instance: Instance
    fibers: Mapping[int, Fiber]

    def __post_init__(self):
        object.__setattr__(self, "fibers", MappingProxyType(dict(self.fibers)))

    def fiber(self, n: int) -> Fiber:
        v = n % self.instance.D
        got = self.fibers.get(v)
        return got if got is not None else Fiber(v, (), ())

    def residues(self) -> tuple[int, ...]:
        return tuple(self.fibers)

    @property
    def total_tuples(self) -> int:
        return sum(len(f) for f in self.fibers.values())


def make_instance(a: Sequence[int], d_choice: DChoice = "lcm") -> Instance:
    """Build an Instance, selecting D per `d_choice`.

    d_choice is "lcm" (default, smallest valid box), "product", or an
    explicit integer that every a_i must divide.
    """
    a = tuple(a)
    if not a:
        raise ValueError("weight tuple must be nonempty")
    for x in a:
        if not isinstance(x, int) or isinstance(x, bool) or x < 1:
            raise ValueError(f"weights must be positive integers, got {a!r}")
    if d_choice == "lcm":
        d = lcm(*a)
    elif d_choice == "product":
        d = prod(a)
    elif isinstance(d_choice, int) and not isinstance(d_choice, bool):
        d = d_choice
        if d < 1 or any(d % ai for ai in a):
            raise ValueError(f"{d} is not a common multiple of {a}")
    else:
        raise ValueError(f"d_choice must be 'lcm', 'product', or an int, got {d_choice!r}")
    return Instance(a=a, D=d, g=gcd(*a))


def _guard(inst: Instance, max_box: int) -> None:
    box = inst.box_size
    if box > max_box:
        raise BoxTooLargeError(box, max_box)


def _scan_rows(inst: Instance, rows: range) -> dict[int, list[tuple[tuple[int, ...], int]]]:
    """Bucket the sub-box with j_1 in `rows` by residue of the weighted sum."""
    a, d = inst.a, inst.D
    lengths = inst.axis_lengths
    out: dict[int, list[tuple[tuple[int, ...], int]]] = {}
    if len(a) == 1:
        a0 = a[0]
        for j0 in rows:
            s = a0 * j0
            out.setdefault(s % d, []).append(((j0,), s))
        return out
    mid_a = a[1:-1]
    mid_ranges = [range(n) for n in lengths[1:-1]]
    last_a = a[-1]
    last_len = lengths[-1]
    for j0 in rows:
        base0 = a[0] * j0
        for mid in itertools.product(*mid_ranges):
            head = (j0, *mid)
            s = base0
            for am, jm in zip(mid_a, mid):
                s += am * jm
            for jr in range(last_len):
                out.setdefault(s % d, []).append((head + (jr,), s))
                s += last_a
    return out


def build_fiber_index(
    inst: Instance, max_box: int = DEFAULT_MAX_BOX, workers: int = 1
) -> FiberIndex:
    """Enumerate the whole box and bucket every tuple by residue.

    With workers > 1 the j_1 range is split into contiguous chunks processed
    by a thread pool; chunks are merged in j_1 order and each fiber gets a
    final lexicographic sort, so the result is identical for any worker count.
    """
    _guard(inst, max_box)
    rows = range(inst.axis_lengths[0])
    if workers <= 1 or len(rows) < 2:
        parts = [_scan_rows(inst, rows)]
    else:
        nchunks = min(workers, len(rows))
        step = -(-len(rows) // nchunks)
        chunks = [rows[i : i + step] for i in range(0, len(rows), step)]
        with ThreadPoolExecutor(max_workers=nchunks) as pool:
            parts = list(pool.map(lambda c: _scan_rows(inst, c), chunks))
    merged: dict[int, list[tuple[tuple[int, ...], int]]] = {}
    for part in parts:
        for residue, items in part.items():
            merged.setdefault(residue, []).extend(items)
    fibers = {}
    for residue in sorted(merged):
        items = sorted(merged[residue])
        fibers[residue] = Fiber(
            residue=residue,
            tuples=tuple(t for t, _ in items),
            sums=tuple(s for _, s in items),
        )
    return FiberIndex(instance=inst, fibers=fibers)


def fiber(inst: Instance, n: int, max_box: int = DEFAULT_MAX_BOX) -> Fiber:
    """The single fiber of residue n mod D, without building the full index.

    Only matching tuples are kept.  One axis is solved by congruence instead
    of being enumerated (a_i j_i must hit a prescribed residue class, which
    pins j_i), cutting the scan cost to box/max_i(D/a_i).  The guard still
    applies to the nominal box size.
    """
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    _guard(inst, max_box)
    d = inst.D
    target = n % d
    if target % inst.g:
        return Fiber(target, (), ())
    a = inst.a
    lengths = inst.axis_lengths
    solved = max(range(len(a)), key=lambda i: lengths[i])
    a_solved = a[solved]
    other_idx = [i for i in range(len(a)) if i != solved]
    other_ranges = [range(lengths[i]) for i in other_idx]
    other_a = [a[i] for i in other_idx]
    items = []
    for rest in itertools.product(*other_ranges):
        partial = 0
        for ai, ji in zip(other_a, rest):
            partial += ai * ji
        need = (target - partial) % d
        if need % a_solved:
            continue
        js = need // a_solved
        full = rest[:solved] + (js,) + rest[solved:]
        items.append((full, partial + a_solved * js))
    items.sort()
    return Fiber(
        residue=target,
        tuples=tuple(t for t, _ in items),
        sums=tuple(s for _, s in items),
    )


def iter_box_sums(inst: Instance, max_box: int = DEFAULT_MAX_BOX) -> Iterator[int]:
    """Stream the weighted sum of every box tuple (lexicographic order)."""
    _guard(inst, max_box)
    a = inst.a
    lengths = inst.axis_lengths
    if len(a) == 1:
        a0 = a[0]
        for j0 in range(lengths[0]):
            yield a0 * j0
        return
    head_ranges = [range(n) for n in lengths[:-1]]
    head_a = a[:-1]
    last_a = a[-1]
    last_len = lengths[-1]
    for head in itertools.product(*head_ranges):
        s = 0
        for ai, ji in zip(head_a, head):
            s += ai * ji
        for _ in range(last_len):
            yield s
            s += last_a


def fiber_index_to_json(index: FiberIndex) -> dict:
    """JSON-ready dict: instance echo plus residue -> list of box tuples.

    All integers are rendered as decimal strings so consumers never face
    64-bit truncation; sums are recomputed on load.
    """
    inst = index.instance
    return {
        "instance": {
            "a": [str(x) for x in inst.a],
            "D": str(inst.D),
            "g": str(inst.g),
        },
        "fibers": {
            str(res): [[str(j) for j in t] for t in f.tuples]
            for res, f in index.fibers.items()
        },
    }


def fiber_index_from_json(data: dict) -> FiberIndex:
    """Inverse of :func:`fiber_index_to_json`, with consistency checks."""
    raw = data["instance"]
    a = tuple(int(x) for x in raw["a"])
    inst = make_instance(a, int(raw["D"]))
    if inst.g != int(raw["g"]):
        raise ValueError(f"inconsistent gcd in serialized index: {raw}")
    fibers = {}
    for key, tuples in data["fibers"].items():
        residue = int(key)
        items = []
        for t in tuples:
            jt = tuple(int(j) for j in t)
            if len(jt) != inst.r:
                raise ValueError(f"tuple {jt} has wrong arity for {a}")
            s = sum(ai * ji for ai, ji in zip(a, jt))
            if s % inst.D != residue:
                raise ValueError(f"tuple {jt} does not lie in fiber {residue}")
            items.append((jt, s))
        items.sort()
        fibers[residue] = Fiber(
            residue=residue,
            tuples=tuple(t for t, _ in items),
            sums=tuple(s for _, s in items),
        )
    return FiberIndex(instance=inst, fibers=fibers)
