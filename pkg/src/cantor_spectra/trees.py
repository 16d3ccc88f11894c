"""
Spectral labelings of the rooted |D|-homogeneous tree.

A labeling assigns a digit in [0, N-1] to every non-root vertex.  It is
spectral when (1) an all-zero path leaves the root, (2) every vertex has an
infinite continuation ending in all 0 or all N-1, and (3) every sibling set L
makes (N, D, L) a Hadamard triple.  Paths ending in constant digits spell out
the base-N expansions of the integers in Lambda(labeling).

Infinite trees are stored as an explicit complete tree of finite depth plus a
``default_rule``: a fixed Hadamard label set containing 0 that is used as the
sibling set of every vertex below the explicit levels.
"""
from __future__ import annotations

import dataclasses
import itertools
import json
import random
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import DomainError, MalformedTreeError, PreconditionError, UnsupportedSystemError
from .expansion import FrequencySet
from .orthogonality import (
    HadamardCandidate,
    branching_profile,
    enumerate_hadamard_L,
    hadamard_triple_check,
    is_orthogonal_family,
)
from .system import CantorSystem, admissible_label_difference

Path = tuple[int, ...]


@dataclasses.dataclass(frozen=True)
class Node:
    label: int | None
    children: tuple[Node, ...] = ()

    def to_dict(self) -> dict:
        out: dict = {} if self.label is None else {"label": self.label}
        out["children"] = [c.to_dict() for c in self.children]
        return out

    @classmethod
    def from_dict(cls, data: dict, is_root: bool = False) -> Node:
        label = None if is_root else data["label"]
        children = tuple(cls.from_dict(c) for c in data.get("children", []))
        return cls(label, tuple(sorted(children, key=lambda c: c.label)))


@dataclasses.dataclass(frozen=True)
class SpectralLabeling:
    system: CantorSystem
    depth: int
    root: Node
    default_rule: tuple[int, ...]

    def walk(self) -> Iterator[tuple[Path, Node]]:
        """Preorder traversal yielding (path of labels from the root, node)."""
        stack: list[tuple[Path, Node]] = [((), self.root)]
        while stack:
            path, node = stack.pop()
            yield path, node
            for child in reversed(node.children):
                stack.append((path + (child.label,), child))

    def node(self, path: Sequence[int]) -> Node | None:
        node = self.root
        for label in path:
            node = next((c for c in node.children if c.label == label), None)
            if node is None:
                return None
        return node

    def child_sets(self) -> dict[Path, tuple[int, ...]]:
        """Sibling label set below every internal vertex of the explicit tree."""
        return {
            path: tuple(c.label for c in node.children)
            for path, node in self.walk()
            if len(path) < self.depth
        }

    def paths(self, length: int | None = None) -> Iterator[Path]:
        """Root-to-vertex label paths of the given length (default: full depth)."""
        length = self.depth if length is None else length
        for path, _ in self.walk():
            if len(path) == length:
                yield path

    def to_dict(self) -> dict:
        return {
            "system": self.system.to_dict(),
            "depth": self.depth,
            "default_rule": list(self.default_rule),
            "root": self.root.to_dict(),
        }

    def to_json(self, indent: int | None = None) -> str:
        separators = (",", ":") if indent is None else None
        return json.dumps(self.to_dict(), indent=indent, separators=separators, ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: dict) -> SpectralLabeling:
        return cls(
            CantorSystem.from_dict(data["system"]),
            int(data["depth"]),
            Node.from_dict(data["root"], is_root=True),
            tuple(data["default_rule"]),
        )

    @classmethod
    def from_json(cls, text: str) -> SpectralLabeling:
        return cls.from_dict(json.loads(text))

    def to_dot(self, name: str = "labeling") -> str:
        lines = [f"digraph {name} {{"]
        ids: dict[Path, str] = {}
        for i, (path, node) in enumerate(self.walk()):
            ids[path] = f"n{i}"
            text = "∅" if node.label is None else str(node.label)
            lines.append(f'  n{i} [label="{text}"];')
            if path:
                lines.append(f"  {ids[path[:-1]]} -> n{i};")
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclasses.dataclass(frozen=True)
class Violation:
    path: Path
    reason: str


def _first_bad_difference(system: CantorSystem, labels: Sequence[int]) -> tuple[int, int] | None:
    for a, b in itertools.combinations(sorted(labels), 2):
        if not admissible_label_difference(system, b - a):
            return a, b
    return None


def _check_structure(tree: SpectralLabeling) -> None:
    m, N = tree.system.m, tree.system.N
    if tree.depth < 1:
        raise MalformedTreeError(f"depth must be >= 1, got {tree.depth}")
    if tree.root.label is not None:
        raise MalformedTreeError("the root carries no label")
    for path, node in tree.walk():
        want = m if len(path) < tree.depth else 0
        if len(node.children) != want:
            raise MalformedTreeError(
                f"vertex {list(path)} has {len(node.children)} children, expected {want}"
            )
        for c in node.children:
            if not isinstance(c.label, int) or not 0 <= c.label < N:
                raise MalformedTreeError(f"label {c.label!r} below {list(path)} outside [0, {N - 1}]")


def validate_labeling(tree: SpectralLabeling) -> tuple[bool, Violation | None]:
    """Check the three spectral conditions; return the first violation found."""
    _check_structure(tree)
    system = tree.system
    for path, node in tree.walk():
        if not node.children:
            continue
        labels = [c.label for c in node.children]
        if len(set(labels)) != len(labels):
            return False, Violation(path, f"repeated sibling labels {sorted(labels)}")
        bad = _first_bad_difference(system, labels)
        if bad is not None:
            return False, Violation(
                path,
                f"sibling labels {sorted(labels)} are not a Hadamard set: difference {bad[1] - bad[0]} is inadmissible",
            )
    path: Path = ()
    for _ in range(tree.depth):
        if tree.node(path + (0,)) is None:
            return False, Violation(path, "no child labeled 0 on the all-zero path")
        path = path + (0,)
    rule = tree.default_rule
    if 0 not in rule:
        return False, Violation((), f"default rule {list(rule)} does not contain 0")
    if len(rule) != system.m or len(set(rule)) != len(rule) or any(not 0 <= l < system.N for l in rule):
        return False, Violation((), f"default rule {list(rule)} is not {system.m} distinct labels in [0, {system.N - 1}]")
    bad = _first_bad_difference(system, rule)
    if bad is not None:
        return False, Violation((), f"default rule {list(rule)} is not a Hadamard set")
    return True, None


def _require_product(system: CantorSystem) -> None:
    if not system.is_cyclotomic_product:
        raise UnsupportedSystemError(
            f"{system}: P_D is not a product of cyclotomic factors Phi_(p^t), t in T"
        )


def default_rule_for(system: CantorSystem) -> tuple[int, ...]:
    """Lexicographically smallest Hadamard label set containing 0."""
    _require_product(system)
    return enumerate_hadamard_L(system, containing_zero=True)[0]


def _build(labels_for: Callable[[Path], Sequence[int]], path: Path, depth: int) -> Node:
    if len(path) == depth:
        return Node(path[-1] if path else None)
    children = tuple(_build(labels_for, path + (l,), depth) for l in sorted(labels_for(path)))
    return Node(path[-1] if path else None, children)


def labeling_from_child_sets(
    system: CantorSystem,
    depth: int,
    child_sets: Mapping[Sequence[int], Iterable[int]],
    default_rule: Sequence[int] | None = None,
) -> SpectralLabeling:
    """
    Build a labeling from explicit sibling sets keyed by vertex path.

    Vertices without an entry get the default rule as their children, so a
    partially specified tree (as drawn by hand, say) becomes complete.
    """
    rule = tuple(default_rule) if default_rule is not None else default_rule_for(system)
    sets = {tuple(k): tuple(v) for k, v in child_sets.items()}
    if depth < 1:
        raise DomainError(f"depth must be >= 1, got {depth}")
    root = _build(lambda path: sets.get(path, rule), (), depth)
    return SpectralLabeling(system, depth, root, rule)


def canonical_labeling(system: CantorSystem, depth: int) -> SpectralLabeling:
    """Every sibling set is the lexicographically smallest Hadamard set containing 0."""
    _require_product(system)
    return labeling_from_child_sets(system, depth, {})


def _lazy_product(factories: Sequence[Callable[[], Iterator]]) -> Iterator[tuple]:
    if not factories:
        yield ()
        return
    head, rest = factories[0], factories[1:]
    for h in head():
        for r in _lazy_product(rest):
            yield (h,) + r


def enumerate_labelings(system: CantorSystem, depth: int, limit: int | None = None) -> Iterator[SpectralLabeling]:
    """
    All spectral labelings of the explicit tree of given depth.

    Sibling sets on the all-zero path must contain 0; elsewhere any Hadamard
    set is allowed.  Order is lexicographic in the preorder sequence of
    sibling sets; at most ``limit`` labelings are produced.
    """
    _require_product(system)
    if depth < 1:
        raise DomainError(f"depth must be >= 1, got {depth}")
    if limit is not None and limit < 1:
        raise DomainError(f"limit must be >= 1, got {limit}")
    all_sets = enumerate_hadamard_L(system)
    zero_sets = [L for L in all_sets if 0 in L]
    rule = zero_sets[0]

    def children(level: int, on_zero: bool) -> Iterator[tuple[Node, ...]]:
        if level == depth:
            yield ()
            return
        for L in zero_sets if on_zero else all_sets:
            factories = [
                (lambda l=l: children(level + 1, on_zero and l == 0)) for l in L
            ]
            for combo in _lazy_product(factories):
                yield tuple(
                    Node(l, sub) for l, sub in zip(L, combo)
                )

    trees = (SpectralLabeling(system, depth, Node(None, ch), rule) for ch in children(0, True))
    return itertools.islice(trees, limit)


def random_labeling(system: CantorSystem, depth: int, rng: random.Random | None = None) -> SpectralLabeling:
    """A spectral labeling with sibling sets drawn uniformly at every vertex."""
    _require_product(system)
    rng = rng or random.Random()
    all_sets = enumerate_hadamard_L(system)
    zero_sets = [L for L in all_sets if 0 in L]

    def pick(path: Path) -> Sequence[int]:
        on_zero = all(l == 0 for l in path)
        return rng.choice(zero_sets if on_zero else all_sets)

    root = _build(pick, (), depth)
    return SpectralLabeling(system, depth, root, zero_sets[0])


def _chain_exists(tree: SpectralLabeling, path: Path, digit: int) -> bool:
    node = tree.node(path)
    for _ in range(len(path), tree.depth):
        node = next((c for c in node.children if c.label == digit), None)
        if node is None:
            return False
    return True


def lambda_of_labeling(tree: SpectralLabeling, depth: int | None = None) -> FrequencySet:
    """
    Integers whose expansion follows a tree path and becomes constant by ``depth``.

    Beyond the explicit tree, paths continue through the default rule: the
    all-zero tail is always available, the all-(N-1) tail only when N-1
    belongs to the default rule.  The result under-approximates the infinite
    Lambda and always contains 0.
    """
    depth = tree.depth if depth is None else depth
    if not 0 <= depth <= tree.depth:
        raise DomainError(f"depth {depth} outside [0, {tree.depth}]")
    N = tree.system.N
    top = N - 1
    negative_tails = top in tree.default_rule
    out = []
    for path in tree.paths(depth):
        value = sum(d * N**j for j, d in enumerate(path))
        if _chain_exists(tree, path, 0):
            out.append(value)
        if negative_tails and _chain_exists(tree, path, top):
            out.append(value - N**depth)
    return FrequencySet(N, tuple(out))


def labeling_from_frequencies(system: CantorSystem, S: Iterable[int], depth: int,
                              default_rule: Sequence[int] | None = None) -> SpectralLabeling:
    """Read sibling sets off the digit branching of S (which must branch fully)."""
    S = list(S)
    profile = branching_profile(system, S, depth)
    sets: dict[Path, tuple[int, ...]] = {}
    for rec in profile:
        if rec.count != system.m:
            raise PreconditionError(
                f"prefix {list(rec.prefix)} branches into {sorted(rec.digits)}, expected {system.m} digits"
            )
        sets[rec.prefix] = tuple(sorted(rec.digits))
    tree = labeling_from_child_sets(system, depth, sets, default_rule)
    if set(tree.child_sets()) != set(sets):
        raise PreconditionError("frequency set does not populate every vertex of the tree")
    return tree


@dataclasses.dataclass(frozen=True)
class BranchingEntry:
    prefix: Path
    count: int
    status: str  # "exact", "deficient", "excess" or "indeterminate"


@dataclasses.dataclass(frozen=True)
class BranchingReport:
    expected: int
    bound: int
    entries: tuple[BranchingEntry, ...]

    @property
    def ok(self) -> bool:
        return all(e.status in ("exact", "indeterminate") for e in self.entries)

    @property
    def determinate(self) -> tuple[BranchingEntry, ...]:
        return tuple(e for e in self.entries if e.status != "indeterminate")

    def failures(self) -> list[BranchingEntry]:
        return [e for e in self.entries if e.status in ("deficient", "excess")]


def check_branching_exactness(system: CantorSystem, S: Iterable[int], depth: int,
                              bound: int | None = None) -> BranchingReport:
    """
    Check that every determinate prefix of S branches into exactly p^|T| digits.

    S is taken to be maximal among integers in [-bound, bound] (default: the
    largest |element|).  A prefix of length n is determinate when
    N^(n+1) <= bound, so the window holds every residue class mod N^(n+1).
    """
    elems = set(S)
    if 0 not in elems:
        raise PreconditionError("0 must belong to the frequency set")
    ok, pair = is_orthogonal_family(system, elems)
    if not ok:
        raise PreconditionError(f"frequency set is not orthogonal: pair {pair}")
    bound = max(abs(k) for k in elems) if bound is None else bound
    expected = system.branching_bound
    entries = []
    for rec in branching_profile(system, elems, depth):
        n = len(rec.prefix)
        if system.N ** (n + 1) > bound:
            status = "indeterminate"
        elif rec.count == expected:
            status = "exact"
        elif rec.count < expected:
            status = "deficient"
        else:
            status = "excess"
        entries.append(BranchingEntry(rec.prefix, rec.count, status))
    return BranchingReport(expected, bound, tuple(entries))


def hadamard_sets_pass(system: CantorSystem, sets: Iterable[Sequence[int]]) -> bool:
    """Both exact and numeric Hadamard checks on every given sibling set."""
    for L in sets:
        cand = HadamardCandidate(system.N, system.D, tuple(L))
        if not (hadamard_triple_check(cand, "exact") and hadamard_triple_check(cand, "numeric")):
            return False
    return True
