"""Names, finite permutations and their action on names, name sets and name lists.

Names are plain strings.  A ``NameSet`` is a ``frozenset`` of names and a
``NameList`` is a tuple of pairwise distinct names.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

Name = str
NameSet = frozenset
NameList = tuple

_USER_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_ANY_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

FRESH_PREFIX = "_w"


def is_name(s: object, user: bool = False) -> bool:
    if not isinstance(s, str):
        return False
    return bool((_USER_NAME if user else _ANY_NAME).match(s))


def check_list(names: Iterable[Name]) -> NameList:
    """Return ``names`` as a tuple, raising ``ValueError`` on repeats."""
    out = tuple(names)
    if len(set(out)) != len(out):
        raise ValueError(f"name list has repeated entries: {list(out)}")
    return out


def underline(names: NameList) -> NameSet:
    return frozenset(names)


@dataclass(frozen=True)
class Perm:
    """A finitely supported bijection on names.

    ``pairs`` lists the moved names only, sorted by source, so that two
    permutations compare equal exactly when they act the same way.
    """

    pairs: tuple[tuple[Name, Name], ...] = ()

    def __post_init__(self):
        src = [a for a, _ in self.pairs]
        dst = [b for _, b in self.pairs]
        if len(set(src)) != len(src) or set(src) != set(dst):
            raise ValueError(f"not a permutation: {self.pairs}")
        if any(a == b for a, b in self.pairs):
            raise ValueError("fixed points must not be stored")
        if list(self.pairs) != sorted(self.pairs):
            raise ValueError("pairs must be sorted")

    @classmethod
    def from_mapping(cls, mapping: Mapping[Name, Name]) -> "Perm":
        return cls(tuple(sorted((a, b) for a, b in mapping.items() if a != b)))

    @classmethod
    def identity(cls) -> "Perm":
        return cls()

    @classmethod
    def swap(cls, a: Name, b: Name) -> "Perm":
        if a == b:
            return cls()
        return cls.from_mapping({a: b, b: a})

    @classmethod
    def cycle(cls, *names: Name) -> "Perm":
        n = len(names)
        return cls.from_mapping({names[i]: names[(i + 1) % n] for i in range(n)})

    @property
    def mapping(self) -> dict[Name, Name]:
        return dict(self.pairs)

    @property
    def domain(self) -> NameSet:
        return frozenset(a for a, _ in self.pairs)

    def is_identity(self) -> bool:
        return not self.pairs

    def __call__(self, a: Name) -> Name:
        for x, y in self.pairs:
            if x == a:
                return y
        return a

    def then(self, other: "Perm") -> "Perm":
        """Apply ``self`` first, then ``other``."""
        names = self.domain | other.domain
        return Perm.from_mapping({a: other(self(a)) for a in names})

    def inverse(self) -> "Perm":
        return Perm.from_mapping({b: a for a, b in self.pairs})

    def act(self, x):
        if isinstance(x, str):
            return self(x)
        if isinstance(x, frozenset):
            return frozenset(self(a) for a in x)
        if isinstance(x, (set,)):
            return {self(a) for a in x}
        if isinstance(x, (tuple, list)):
            return type(x)(self(a) for a in x)
        raise TypeError(f"cannot act on {type(x).__name__}")

    def transpositions(self) -> list[tuple[Name, Name]]:
        """Decompose into transpositions ``t1, ..., tk`` applied left to right."""
        m = self.mapping
        out: list[tuple[Name, Name]] = []
        seen: set[Name] = set()
        for start in sorted(m):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = m[start]
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = m[nxt]
            # (c0 c1 ... ck) sends c_i to c_{i+1}
            for i in range(1, len(cyc)):
                out.append((cyc[0], cyc[i]))
        return out

    def to_json(self) -> list[str]:
        return [f"{a}->{b}" for a, b in self.pairs]

    @classmethod
    def from_json(cls, items: Iterable[str]) -> "Perm":
        m = {}
        for item in items:
            a, b = item.split("->")
            m[a.strip()] = b.strip()
        return cls.from_mapping(m)

    def __str__(self):
        if not self.pairs:
            return "id"
        return "{" + ", ".join(f"{a}->{b}" for a, b in self.pairs) + "}"


def perm_compose(p: Perm, q: Perm) -> Perm:
    return p.then(q)


def perm_inverse(p: Perm) -> Perm:
    return p.inverse()


def perm_apply(p: Perm, x: Union[Name, NameSet, NameList]):
    return p.act(x)


class FreshNames:
    """Deterministic supply ``_w0, _w1, ...`` skipping names in ``avoid``.

    Each translation creates its own supply, so nothing is shared between
    calls.
    """

    def __init__(self, avoid: Iterable[Name] = (), prefix: str = FRESH_PREFIX):
        self.avoid = set(avoid)
        self.prefix = prefix
        self.counter = 0

    def __iter__(self) -> Iterator[Name]:
        return self

    def __next__(self) -> Name:
        while True:
            name = f"{self.prefix}{self.counter}"
            self.counter += 1
            if name not in self.avoid:
                self.avoid.add(name)
                return name

    def take(self, n: int) -> NameList:
        return tuple(next(self) for _ in range(n))
