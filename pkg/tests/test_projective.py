"""PG(n, q) enumeration, subspace lattice, frames, and collineations."""

from __future__ import annotations

from itertools import combinations, product

import pytest

from pgtool import (
    ProjectiveSpace,
    SemilinearMap,
    SplitMix64,
    create_field,
    frame_coordinates,
    is_frame,
    space_for,
    standard_frame,
)
from pgtool import linalg
from pgtool.errors import (
    NotAFrame,
    NotALine,
    PointInBase,
    PointNotInSubspace,
    SingularMatrix,
    SizeCapExceeded,
    SpaceMismatch,
)


def _span_oracle(space, pts):
    """All nonzero linear combinations of the given points, normalized.

    Independent of the row-reduction path: plain coefficient enumeration.
    """
    field = space.field
    out = set()
    for coeffs in product(field.elements(), repeat=len(pts)):
        acc = [0] * (space.n + 1)
        for c, p in zip(coeffs, pts):
            for i, x in enumerate(p):
                acc[i] = field.add(acc[i], field.mul(c, x))
        if any(acc):
            out.add(space.normalize(acc))
    return out


@pytest.mark.parametrize(
    "n,q,count", [(1, 2, 3), (2, 3, 13), (5, 4, 1365), (2, 2, 7), (3, 2, 15)]
)
def test_point_counts(n, q, count):
    space = space_for(n, q)
    pts = space.points()
    assert len(pts) == count == space.point_count
    assert len(set(pts)) == count
    assert pts == sorted(pts)  # lexicographic by codes
    assert all(p[next(i for i, x in enumerate(p) if x)] == 1 for p in pts)


def test_point_enum_cap():
    space = ProjectiveSpace(create_field(2, 10), 2)  # (1024^3-1)/1023 > 10^6
    with pytest.raises(SizeCapExceeded):
        space.points()


def test_normalize():
    space = space_for(1, 3)
    assert space.normalize((2, 1)) == (1, 2)  # scale by inverse of 2
    with pytest.raises(SpaceMismatch):
        space.normalize((0, 0))


def test_span_examples():
    space = space_for(2, 3)
    assert space.span([]).dim == -1
    assert space.span([(1, 0, 0), (0, 1, 0)]).dim == 1
    conic = [(1, 0, 0), (1, 1, 1), (1, 2, 1), (0, 0, 1)]  # (1,t,t^2) and (0,0,1)
    sub = space.span(conic)
    assert sub.dim == 2
    assert set(sub.points()) == _span_oracle(space, conic)


def test_span_is_closure_operator_fano():
    space = space_for(2, 2)
    pts = space.points()
    spans = {}
    for size in range(len(pts) + 1):
        for subset in combinations(pts, size):
            sub = space.span(subset)
            member = set(sub.points())
            assert set(subset) <= member
            spans[subset] = member
            assert set(space.span(member).points()) == member  # idempotent
    for small, big in spans.items():
        for other, bigger in spans.items():
            if set(small) <= set(other):
                assert big <= bigger  # monotone


def test_span_closure_properties_sampled_pg24():
    space = space_for(2, 4)
    pts = space.points()
    rng = SplitMix64(24)
    for _ in range(50):
        subset = [pts[rng.randbelow(len(pts))] for _ in range(rng.randbelow(5))]
        member = set(space.span(subset).points())
        assert set(subset) <= member
        assert set(space.span(member).points()) == member
        assert member <= set(space.span(subset + [pts[0]]).points())


def test_meet_join_examples():
    space = space_for(2, 3)
    l1 = space.span([(1, 0, 0), (0, 1, 0)])
    assert space.meet(l1, l1) == l1
    l2 = space.span([(1, 0, 0), (0, 0, 1)])
    p = space.meet(l1, l2)
    assert p.dim == 0 and p.rows[0] == (1, 0, 0)
    assert space.join(l1, l2).dim == 2


def test_meet_complementary_plane_example():
    # image span of the line x0 = 0 meets the first coordinate plane trivially
    s23 = space_for(2, 3)
    from pgtool import veronese_for

    ver = veronese_for(s23)
    t_line = s23.span([(0, 1, 0), (0, 0, 1)])
    base = ver.target.span([ver.apply(x) for x in t_line.points()])
    eprime = ver.target.span(
        [(1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0)]
    )
    assert base.dim == 2
    assert ver.target.meet(base, eprime).dim == -1


def _all_subspaces(space):
    subs = {space.empty_subspace(), space.full_subspace()}
    pts = space.points()
    for p in pts:
        subs.add(space.span([p]))
    for size in (2, 3):
        for subset in combinations(pts, size):
            subs.add(space.span(subset))
    return subs


def test_grassmann_identity_pg32():
    space = space_for(3, 2)
    subs = _all_subspaces(space)
    assert len(subs) == 67  # 1 + 15 + 35 + 15 + 1
    for a in subs:
        for b in subs:
            j, m = space.join(a, b), space.meet(a, b)
            assert j.dim + m.dim == a.dim + b.dim


def test_lines_through_and_line_points():
    fano = space_for(2, 2)
    assert len(fano.lines_through((1, 0, 0))) == 3
    s23 = space_for(2, 3)
    assert len(s23.lines_through((1, 1, 1))) == 4
    line = s23.span([(1, 0, 0), (0, 1, 0)])
    assert len(s23.line_points(line)) == 4
    with pytest.raises(NotALine):
        s23.line_points(s23.full_subspace())
    with pytest.raises(PointNotInSubspace):
        s23.lines_through((0, 0, 1), line)


def test_pencil_size_in_solid():
    space = space_for(3, 3)
    pencil = space.lines_through((1, 0, 0, 0))
    assert len(pencil) == (3**3 - 1) // 2  # (q^d - 1)/(q - 1), d = 3


def test_quotient_point():
    space = space_for(2, 3)
    x = (1, 1, 2)
    assert space.quotient_point(space.empty_subspace(), x).dim == 0
    q = space.span([(1, 0, 0)])
    line = space.quotient_point(q, x)
    assert line.dim == 1 and line.contains((1, 0, 0)) and line.contains(x)
    with pytest.raises(PointInBase):
        space.quotient_point(q, (2, 0, 0))


def test_quotient_point_over_hyperplane_image():
    from pgtool import veronese_for

    s23 = space_for(2, 3)
    ver = veronese_for(s23)
    t_line = s23.span([(0, 1, 0), (0, 0, 1)])
    base = ver.target.span([ver.apply(x) for x in t_line.points()])
    ext = ver.target.quotient_point(base, ver.apply((1, 1, 1)))
    assert ext.dim == 3


def test_hyperplane_count():
    for n, q in ((2, 2), (2, 3), (3, 2)):
        space = space_for(n, q)
        hps = space.hyperplanes()
        assert len(hps) == space.point_count
        assert all(h.dim == n - 1 for h in hps)
        assert len(set(hps)) == len(hps)


def test_standard_frame_coordinates():
    space = space_for(2, 3)
    frame = standard_frame(space)
    assert is_frame(space, frame)
    assert frame_coordinates(space, frame, (1, 1, 1)) == (1, 1, 1)
    assert frame_coordinates(space, frame, (1, 2, 0)) == (1, 2, 0)
    for i, pt in enumerate(frame[:-1]):
        unit = tuple(1 if j == i else 0 for j in range(3))
        assert frame_coordinates(space, frame, pt) == unit


def test_is_frame_negative():
    space = space_for(2, 3)
    assert not is_frame(space, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0)])
    assert not is_frame(space, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    with pytest.raises(NotAFrame):
        frame_coordinates(
            space, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0)], (1, 1, 1)
        )


@pytest.mark.parametrize("n,q", [(2, 4), (3, 3)])
def test_random_frames_coordinate_normalization(n, q):
    space = space_for(n, q)
    pts = space.points()
    rng = SplitMix64(n * 100 + q)
    found = 0
    while found < 100:
        idxs = rng.sample_indices(len(pts), n + 2)
        frame = [pts[i] for i in idxs]
        if not is_frame(space, frame):
            continue
        found += 1
        ones = tuple(1 for _ in range(n + 1))
        assert frame_coordinates(space, frame, frame[-1]) == ones
        for i, pt in enumerate(frame[:-1]):
            unit = tuple(1 if j == i else 0 for j in range(n + 1))
            assert frame_coordinates(space, frame, pt) == unit


def test_semilinear_examples():
    s13 = space_for(1, 3)
    ident = SemilinearMap(s13, ((1, 0), (0, 1)), 0)
    assert all(ident.apply(p) == p for p in s13.points())
    swap = SemilinearMap(s13, ((0, 1), (1, 0)), 0)
    # (1,2) -> (2,1), normalized by 2^-1 = 2 back to (1,2)
    assert swap.apply((1, 2)) == (1, 2)
    assert swap.apply((1, 1)) == (1, 1)
    assert swap.apply((0, 1)) == (1, 0)

    s14 = space_for(1, 4)
    frob = SemilinearMap(s14, ((1, 0), (0, 1)), 1)
    assert frob.apply((1, 2)) == (1, 3)  # omega -> omega^2


def test_semilinear_compose_invert():
    space = space_for(2, 4)
    rng = SplitMix64(42)
    from pgtool import random_semilinear

    for _ in range(20):
        k1 = random_semilinear(space, rng)
        k2 = random_semilinear(space, rng)
        comp = k1.then(k2)
        inv = k1.inverse()
        for pt in space.points()[:7]:
            assert comp.apply(pt) == k2.apply(k1.apply(pt))
            assert inv.apply(k1.apply(pt)) == pt
            assert k1.apply(inv.apply(pt)) == pt


def test_semilinear_preserves_collinearity():
    space = space_for(2, 4)
    pts = space.points()
    rng = SplitMix64(7)
    from pgtool import random_semilinear

    kappa = random_semilinear(space, rng)
    field = space.field
    for _ in range(1000):
        triple = [pts[rng.randbelow(len(pts))] for _ in range(3)]
        before = linalg.rank(field, triple)
        after = linalg.rank(field, [kappa.apply(p) for p in triple])
        assert before == after


def test_semilinear_rejects_singular():
    space = space_for(1, 3)
    with pytest.raises(SingularMatrix):
        SemilinearMap(space, ((1, 2), (2, 1)), 0)  # det = 1 - 4 = 0 mod 3
