"""Finite thin weighted categories over images, and the functor machinery built on them.

An association network is modeled as a *latent* category: a complete weighted
directed graph whose nodes (images) are the objects and whose arrow weights are
elicitation probabilities in [0, 1].  A comprehension episode works inside an
*elicited* category: the thin, unweighted category of arrows that have actually
fired, always closed under identities.  The meaning of an image X is its
coslice: objects are the elicited arrows out of X, morphisms are commutative
triangles (in a thin category a triangle exists exactly when its three arrows
do).

The metaphor machinery lives here too: force-adding the metaphor arrow,
the composition functor it induces (each arrow out of the source root is
composed with the metaphor arrow), and advisory law checking for
functoriality/naturality of the partial functors that exploration produces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence, Union

import numpy as np

Arrow = tuple[int, int]
ImageRef = Union["Image", int, str]


@dataclass(frozen=True)
class Image:
    """A node of the association network (a concept such as 'butterfly')."""

    id: int
    label: str


class LatentCategory:
    """Complete weighted directed graph over images; immutable once built.

    weight[i, j] is the probability that the arrow i -> j fires during a
    comprehension episode.  The diagonal is pinned to 1.0: identity arrows
    are always elicitable.
    """

    def __init__(self, images: Sequence[Image], weight: np.ndarray):
        self.images: tuple[Image, ...] = tuple(images)
        self.weight = weight
        self.weight.flags.writeable = False
        self._by_label = {im.label: im for im in self.images}

    @property
    def n(self) -> int:
        return len(self.images)

    def image(self, ref: ImageRef) -> Image:
        """Resolve an Image, id, or label to the Image it names."""
        if isinstance(ref, Image):
            if ref.id >= self.n or self.images[ref.id] != ref:
                raise ValueError(f"image {ref!r} does not belong to this network")
            return ref
        if isinstance(ref, int):
            if not 0 <= ref < self.n:
                raise ValueError(f"image id {ref} out of range 0..{self.n - 1}")
            return self.images[ref]
        if ref not in self._by_label:
            raise ValueError(f"unknown image label {ref!r}")
        return self._by_label[ref]

    def labels(self) -> list[str]:
        return [im.label for im in self.images]

    def __repr__(self) -> str:
        return f"LatentCategory(n={self.n})"


def build_latent(images: Sequence[Image], weights) -> LatentCategory:
    """Validate and assemble a latent category.

    The diagonal is forced to 1.0 whatever the input says; every off-diagonal
    entry must already be a probability.  Rejects duplicate or empty labels,
    non-contiguous ids, and non-square matrices.
    """
    images = list(images)
    n = len(images)
    if n == 0:
        raise ValueError("a latent category needs at least one image")
    for k, im in enumerate(images):
        if im.id != k:
            raise ValueError(f"image ids must be contiguous 0..{n - 1}, got {im.id} at {k}")
        if not im.label:
            raise ValueError(f"image {k} has an empty label")
    labels = [im.label for im in images]
    if len(set(labels)) != n:
        dupes = sorted({l for l in labels if labels.count(l) > 1})
        raise ValueError(f"duplicate image labels: {dupes}")

    w = np.array(weights, dtype=np.float64)
    if w.shape != (n, n):
        raise ValueError(f"weight matrix shape {w.shape} does not match {n} images")
    if not np.all(np.isfinite(w)):
        raise ValueError("weight matrix contains non-finite entries")
    off = ~np.eye(n, dtype=bool)
    if np.any((w[off] < 0.0) | (w[off] > 1.0)):
        bad = np.argwhere(off & ((w < 0.0) | (w > 1.0)))[0]
        i, j = int(bad[0]), int(bad[1])
        raise ValueError(
            f"weight[{i}][{j}] = {w[i, j]} out of [0, 1] "
            f"({labels[i]!r} -> {labels[j]!r})"
        )
    np.fill_diagonal(w, 1.0)
    return LatentCategory(images, w)


def latent_from_labels(labels: Sequence[str], weights) -> LatentCategory:
    return build_latent([Image(i, l) for i, l in enumerate(labels)], weights)


class ElicitedCategory:
    """The thin category of currently-fired associations.

    Backed by a set of ordered image pairs, so thinness holds by
    construction.  All identity pairs are present from the start.  Arrows can
    only be elicited along positive-weight latent arrows unless force-added
    (metaphor presentation, initial setup, composites).
    """

    def __init__(self, base: LatentCategory):
        self.base = base
        self._pairs: set[Arrow] = {(i, i) for i in range(base.n)}
        self._composite: set[Arrow] = set()

    def elicit(self, i: int, j: int, *, forced: bool = False, composite: bool = False) -> None:
        if not (0 <= i < self.base.n and 0 <= j < self.base.n):
            raise ValueError(f"arrow ({i}, {j}) references unknown images")
        if (i, j) in self._pairs:
            return
        if not forced and self.base.weight[i, j] <= 0.0:
            raise ValueError(
                f"arrow {self.base.images[i].label!r} -> {self.base.images[j].label!r} "
                "has zero weight and was not force-added"
            )
        self._pairs.add((i, j))
        if composite:
            self._composite.add((i, j))

    def is_elicited(self, i: int, j: int) -> bool:
        return (i, j) in self._pairs

    def is_composite(self, i: int, j: int) -> bool:
        return (i, j) in self._composite

    def arrows(self) -> list[Arrow]:
        return sorted(self._pairs)

    def arrows_from(self, i: int) -> list[int]:
        """Codomain ids of elicited arrows out of i, identity excluded, sorted."""
        return sorted(j for (a, j) in self._pairs if a == i and j != i)

    def copy(self) -> "ElicitedCategory":
        out = ElicitedCategory(self.base)
        out._pairs = set(self._pairs)
        out._composite = set(self._composite)
        return out

    def __len__(self) -> int:
        return len(self._pairs)

    def __repr__(self) -> str:
        return f"ElicitedCategory(arrows={len(self._pairs)}, base={self.base!r})"


Mode = Literal["object", "relation"]


def elicit_initial(
    latent: LatentCategory,
    source_root: ImageRef,
    source_initials: Sequence[ImageRef],
    target_root: ImageRef,
    target_initials: Sequence[ImageRef],
    mode: Mode,
) -> ElicitedCategory:
    """Set up the deterministic initial state of a comprehension episode.

    Both roots get their arrows to their initial images.  In relation mode,
    additionally every ordered pair of initials *within* each side is
    elicited, so both coslices start with their full triangle structure.
    All of this is forced: setup ignores latent weights.
    """
    if mode not in ("object", "relation"):
        raise ValueError(f"mode must be 'object' or 'relation', got {mode!r}")
    b = latent.image(source_root)
    a = latent.image(target_root)
    b_init = [latent.image(x) for x in source_initials]
    a_init = [latent.image(x) for x in target_initials]
    for root, initials in ((b, b_init), (a, a_init)):
        if any(im.id == root.id for im in initials):
            raise ValueError(f"root {root.label!r} listed among its own initial images")
        if len({im.id for im in initials}) != len(initials):
            raise ValueError(f"duplicate initial images for root {root.label!r}")

    ec = ElicitedCategory(latent)
    for root, initials in ((b, b_init), (a, a_init)):
        for im in initials:
            ec.elicit(root.id, im.id, forced=True)
        if mode == "relation":
            for p in initials:
                for q in initials:
                    if p.id != q.id:
                        ec.elicit(p.id, q.id, forced=True)
    return ec


def add_metaphor_arrow(
    elicited: ElicitedCategory, target_root: ImageRef, source_root: ImageRef
) -> ElicitedCategory:
    """Force-elicit the metaphor arrow target -> source ('A is B' fires A -> B)."""
    a = elicited.base.image(target_root)
    b = elicited.base.image(source_root)
    elicited.elicit(a.id, b.id, forced=True)
    return elicited


@dataclass
class CosliceView:
    """The meaning of ``root``: arrows out of it, plus their triangles.

    objects:   elicited arrows root -> X, identity excluded, sorted by codomain.
    triangles: ((root, i), (root, j), (i, j)) for every ordered pair of
               distinct objects whose connecting arrow is elicited.
    """

    root: Image
    objects: list[Arrow]
    triangles: list[tuple[Arrow, Arrow, Arrow]]


def coslice(elicited: ElicitedCategory, root: ImageRef) -> CosliceView:
    r = elicited.base.image(root)
    codomains = elicited.arrows_from(r.id)
    objects = [(r.id, x) for x in codomains]
    triangles = [
        ((r.id, i), (r.id, j), (i, j))
        for i in codomains
        for j in codomains
        if i != j and elicited.is_elicited(i, j)
    ]
    return CosliceView(root=r, objects=objects, triangles=triangles)


@dataclass
class Correspondence:
    """One comprehension correspondence: source initial B_i maps to target initial A_j.

    witness_weight is the latent weight of the witness arrow B_i -> A_j.  via
    records which search produced it ('object' or 'triangle'); triangle
    correspondences carry the winning structure distance and the index of the
    ordered source pair that proposed them.
    """

    source_initial: Image
    target_initial: Image
    witness_weight: float
    via: Literal["object", "triangle"]
    distance: float | None = None
    pair_index: int | None = None


@dataclass
class FunctorMap:
    """A (possibly partial) functor between coslices, with its witnesses.

    object_map sends source coslice objects to target coslice objects, both
    keyed by codomain image id.  witnesses[b] is the elicited arrow whose
    existence makes the naturality component at b commute in the thin
    elicited category.
    """

    source_root: Image
    target_root: Image
    object_map: dict[int, int] = field(default_factory=dict)
    witnesses: dict[int, Arrow] = field(default_factory=dict)
    correspondences: dict[int, Correspondence] = field(default_factory=dict)

    def width(self) -> int:
        """Size of the functor's range: distinct target objects mapped to."""
        return len(set(self.object_map.values()))

    def __repr__(self) -> str:
        return (
            f"FunctorMap({self.source_root.label!r} -> {self.target_root.label!r}, "
            f"mapped={len(self.object_map)}, width={self.width()})"
        )


def bmf(elicited: ElicitedCategory, metaphor_arrow: Arrow) -> FunctorMap:
    """Build the composition functor induced by the metaphor arrow A -> B.

    Every elicited arrow B -> X becomes the composite A -> X, which is
    force-elicited and tagged as a composite when it did not already exist.
    Composites scaffold the search; they are never correspondence targets.
    The returned FunctorMap sends each source object to its composite (same
    codomain), witnessed by identity arrows.
    """
    a_id, b_id = metaphor_arrow
    if not elicited.is_elicited(a_id, b_id):
        raise ValueError(
            f"metaphor arrow ({a_id}, {b_id}) is not elicited; present the metaphor first"
        )
    source_objects = elicited.arrows_from(b_id)
    if not source_objects:
        raise ValueError("source coslice is empty: nothing to compose with the metaphor arrow")

    fmap = FunctorMap(
        source_root=elicited.base.images[b_id],
        target_root=elicited.base.images[a_id],
    )
    for x in source_objects:
        if x == a_id:
            # composing B -> A with the metaphor arrow lands on the identity
            # of A, which is the coslice's trivial object; skip it.
            continue
        if not elicited.is_elicited(a_id, x):
            elicited.elicit(a_id, x, forced=True, composite=True)
        fmap.object_map[x] = x
        fmap.witnesses[x] = (x, x)
    return fmap


@dataclass
class LawReport:
    """Advisory functor/naturality diagnostics; never raises.

    Partial functors from exploration legitimately leave objects unmapped, so
    a report with violations is information, not an error.  Identity
    preservation needs no entries: identities are always elicited and a thin
    category has at most one arrow per ordered pair.
    """

    objects_checked: int = 0
    triangles_checked: int = 0
    witness_failures: list[str] = field(default_factory=list)
    functoriality_failures: list[str] = field(default_factory=list)
    naturality_failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (
            self.witness_failures or self.functoriality_failures or self.naturality_failures
        )

    def summary(self) -> str:
        if self.ok:
            return (
                f"laws OK ({self.objects_checked} mapped objects, "
                f"{self.triangles_checked} triangles checked)"
            )
        lines = []
        for kind, failures in (
            ("witness", self.witness_failures),
            ("functoriality", self.functoriality_failures),
            ("naturality", self.naturality_failures),
        ):
            for f in failures:
                lines.append(f"{kind}: {f}")
        return "\n".join(lines)


def check_functor_laws(fmap: FunctorMap, elicited: ElicitedCategory) -> LawReport:
    """Check a FunctorMap against the elicited category it lives in.

    Witness soundness: each mapped object's target arrow, witness arrow, and
    composite leg must all be elicited (the triangle through the witness then
    closes automatically - thinness).  Functoriality: every source triangle
    with both endpoints mapped must have its image triangle present.
    Naturality: for the same triangles, the four morphisms of the naturality
    square must exist; in a thin category that is the whole commutativity
    check.
    """
    report = LawReport()
    labels = elicited.base.labels()
    a_id = fmap.target_root.id
    b_id = fmap.source_root.id

    def name(arrow: Arrow) -> str:
        return f"{labels[arrow[0]]!r}->{labels[arrow[1]]!r}"

    for bi, aj in sorted(fmap.object_map.items()):
        report.objects_checked += 1
        witness = fmap.witnesses.get(bi)
        if witness is None:
            report.witness_failures.append(f"mapped object {labels[bi]!r} has no witness arrow")
            continue
        if witness != (bi, aj):
            report.witness_failures.append(
                f"witness {name(witness)} does not link {labels[bi]!r} to {labels[aj]!r}"
            )
        for arrow, what in (
            ((a_id, aj), "target coslice object"),
            (witness, "witness arrow"),
            ((a_id, bi), "composite leg"),
        ):
            if not elicited.is_elicited(*arrow):
                report.witness_failures.append(f"{what} {name(arrow)} is not elicited")

    src = coslice(elicited, fmap.source_root)
    for (_, bp), (_, bq), g in src.triangles:
        if bp not in fmap.object_map or bq not in fmap.object_map:
            continue
        report.triangles_checked += 1
        ai, aj = fmap.object_map[bp], fmap.object_map[bq]
        tri = f"({labels[bp]!r}, {labels[bq]!r})"

        image_arrows = [(a_id, ai), (a_id, aj), (ai, aj)]
        missing = [arr for arr in image_arrows if not elicited.is_elicited(*arr)]
        for arr in missing:
            report.functoriality_failures.append(
                f"source triangle {tri}: image arrow {name(arr)} missing"
            )

        # naturality square at this triangle: base functor image, new functor
        # image, and the two witness components, each a triangle of arrows.
        square = {
            "base image": [(a_id, bp), (a_id, bq), g],
            "functor image": image_arrows,
            "component at domain": [(a_id, bp), (a_id, ai), fmap.witnesses[bp]],
            "component at codomain": [(a_id, bq), (a_id, aj), fmap.witnesses[bq]],
        }
        for leg, arrows in square.items():
            for arr in arrows:
                if not elicited.is_elicited(*arr):
                    report.naturality_failures.append(
                        f"source triangle {tri}: {leg} needs missing arrow {name(arr)}"
                    )
    return report
