"""Seeded construction of candidate maps and random collineations."""

from __future__ import annotations

from .embeddings import PointMap
from .errors import ParamOutOfRange
from .fields import GaloisField, create_field, prime_power
from .prng import SplitMix64
from .projective import ProjectiveSpace, SemilinearMap, is_frame
from .veronese import VeroneseMap, veronese_for


def space_for(n: int, q: int) -> ProjectiveSpace:
    p, k = prime_power(q)
    return ProjectiveSpace(create_field(p, k), n)


def random_point(space: ProjectiveSpace, rng: SplitMix64):
    pts = space.points()
    return pts[rng.randbelow(len(pts))]


def random_invertible_matrix(field: GaloisField, size: int, rng: SplitMix64):
    from . import linalg

    while True:
        matrix = tuple(
            tuple(rng.randbelow(field.q) for _ in range(size)) for _ in range(size)
        )
        if linalg.rank(field, matrix) == size:
            return matrix


def random_semilinear(
    space: ProjectiveSpace, rng: SplitMix64, alpha: int | None = None
) -> SemilinearMap:
    if alpha is None:
        alpha = rng.randbelow(space.field.k)
    matrix = random_invertible_matrix(space.field, space.n + 1, rng)
    return SemilinearMap(space, matrix, alpha)


def veronese_point_map(n: int, q: int) -> PointMap:
    ver = veronese_for(space_for(n, q))
    return PointMap.from_function(ver.source, ver.target, ver.apply)


def compose_with_veronese(ver: VeroneseMap, kappa: SemilinearMap) -> PointMap:
    return PointMap.from_function(
        ver.source, ver.target, lambda x: kappa.apply(ver.apply(x))
    )


def veronese_kappa_map(n: int, q: int, seed: int) -> tuple[PointMap, SemilinearMap]:
    """Veronese table composed with a seeded random collineation."""
    ver = veronese_for(space_for(n, q))
    rng = SplitMix64(seed)
    kappa = random_semilinear(ver.target, rng)
    return compose_with_veronese(ver, kappa), kappa


def frame_injection_map(seed: int) -> PointMap:
    """Random injection of the 7-point plane onto a random frame (n=2, q=2)."""
    ver = veronese_for(space_for(2, 2))
    source, target = ver.source, ver.target
    rng = SplitMix64(seed)
    tgt_pts = target.points()
    while True:
        idxs = rng.sample_indices(len(tgt_pts), target.n + 2)
        frame = [tgt_pts[i] for i in idxs]
        if is_frame(target, frame):
            break
    rng.shuffle(frame)
    table = {src: frame[i] for i, src in enumerate(source.points())}
    return PointMap(source, target, table)


def broken_map(n: int, q: int, seed: int) -> PointMap:
    """Veronese table with one entry moved off the image (stays injective)."""
    base = veronese_point_map(n, q)
    rng = SplitMix64(seed)
    src_pts = base.source.points()
    tgt_pts = base.target.points()
    image = set(base.image())
    victim = src_pts[rng.randbelow(len(src_pts))]
    while True:
        replacement = tgt_pts[rng.randbelow(len(tgt_pts))]
        if replacement not in image:
            break
    table = dict(base.table)
    table[victim] = replacement
    return PointMap(base.source, base.target, table)


def generate_embedding(kind: str, n: int, q: int, seed: int | None = None) -> PointMap:
    """Build a candidate map of the requested kind.

    Kinds: ``veronese`` (no seed), ``veronese_kappa``, ``frame_injection``
    (forces n=2, q=2), ``broken`` (negative control).
    """
    if kind == "veronese":
        return veronese_point_map(n, q)
    if kind == "veronese_kappa":
        if seed is None:
            raise ParamOutOfRange("veronese_kappa needs a seed")
        return veronese_kappa_map(n, q, seed)[0]
    if kind == "frame_injection":
        if (n, q) != (2, 2):
            raise ParamOutOfRange("frame_injection is defined for n=2, q=2")
        if seed is None:
            raise ParamOutOfRange("frame_injection needs a seed")
        return frame_injection_map(seed)
    if kind == "broken":
        if seed is None:
            raise ParamOutOfRange("broken needs a seed")
        return broken_map(n, q, seed)
    raise ParamOutOfRange(f"unknown kind {kind!r}")
