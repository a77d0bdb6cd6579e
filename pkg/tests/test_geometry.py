import itertools
import math

import numpy as np
import pytest

from conftest import random_graph
from twodist.config import get_config
from twodist.errors import (
    CompleteGraphError,
    GeometricInconsistencyError,
    InfeasibleDistanceError,
)
from twodist.geometry import (
    PointConfig,
    SQRT2,
    beta_star_numeric,
    jspherical_embedding,
    kuperberg_decompose,
    min_enclosing_ball,
    phi,
    realize,
    solve_phi,
)
from twodist.graphs import (
    Graph,
    MultipartiteSignature,
    complement_component_sets,
    complete_multipartite,
)
from twodist.invariants import cm_polynomials, feasible_interval


def disjoint_cliques(*sizes):
    from twodist.graphs import complement

    return complement(complete_multipartite(MultipartiteSignature(sizes)))


# ---------------------------------------------------------------------------
# realize
# ---------------------------------------------------------------------------


class TestRealize:
    def test_triangle(self):
        cfg = realize(Graph.complete(3), 5.0)  # b unused: no non-edges
        assert cfg.rank == 2
        d = cfg.distance_matrix()
        for i, j in ((0, 1), (0, 2), (1, 2)):
            assert abs(d[i, j] - 1.0) < 1e-9

    def test_unit_square(self):
        cfg = realize(complete_multipartite(MultipartiteSignature((2, 2))), math.sqrt(2))
        assert cfg.rank == 2
        assert cfg.max_distance_residual(
            complete_multipartite(MultipartiteSignature((2, 2)))
        ) < 1e-9

    def test_path3_collinear(self):
        g = Graph.path(3)
        cfg = realize(g, 2.0)
        assert cfg.rank == 1
        assert cfg.max_distance_residual(g) < 1e-9

    def test_single_vertex(self):
        cfg = realize(Graph.empty(1), 2.0)
        assert cfg.n == 1 and cfg.rank == 0

    def test_infeasible_above_window(self):
        with pytest.raises(InfeasibleDistanceError):
            realize(Graph.path(3), 3.0)  # t = 9 > 4

    def test_infeasible_below_window(self):
        with pytest.raises(InfeasibleDistanceError):
            realize(Graph.cycle(5), 0.5)  # t = 0.25 < (3-sqrt5)/2

    def test_distance_residuals_random(self, rng):
        for _ in range(30):
            g = random_graph(rng, rng.randrange(2, 8))
            lo, hi = feasible_interval(g)
            hi_eff = min(hi, 9.0)
            t = rng.uniform(max(lo, 1.0) + 1e-3, hi_eff) if hi_eff > 1 else 1.0
            cfg = realize(g, math.sqrt(t))
            assert cfg.max_distance_residual(g) < 1e-9

    def test_interior_rank_full(self, rng):
        # Between the window endpoints the configuration spans n-1 dims.
        for _ in range(15):
            g = random_graph(rng, rng.randrange(2, 7))
            lo, hi = feasible_interval(g)
            t = 0.5 * (max(lo, 1.0) + min(hi, 4.0))
            if not t > max(lo, 1.0):
                continue
            cfg = realize(g, math.sqrt(t))
            assert cfg.rank == g.n - 1


# ---------------------------------------------------------------------------
# minimum enclosing ball
# ---------------------------------------------------------------------------


def brute_circle_2d(points):
    """Brute-force smallest enclosing circle radius in the plane."""
    pts = [np.asarray(p, float) for p in points]

    def covers(c, r):
        return all(np.linalg.norm(p - c) <= r + 1e-9 for p in pts)

    best = math.inf
    for p, q in itertools.combinations_with_replacement(pts, 2):
        c = (p + q) / 2
        r = np.linalg.norm(p - c)
        if r < best and covers(c, r):
            best = r
    for p, q, s in itertools.combinations(pts, 3):
        d = 2 * (p[0] * (q[1] - s[1]) + q[0] * (s[1] - p[1]) + s[0] * (p[1] - q[1]))
        if abs(d) < 1e-12:
            continue
        ux = (
            (p @ p) * (q[1] - s[1]) + (q @ q) * (s[1] - p[1]) + (s @ s) * (p[1] - q[1])
        ) / d
        uy = (
            (p @ p) * (s[0] - q[0]) + (q @ q) * (p[0] - s[0]) + (s @ s) * (q[0] - p[0])
        ) / d
        c = np.array([ux, uy])
        r = np.linalg.norm(p - c)
        if r < best and covers(c, r):
            best = r
    return best


class TestEnclosingBall:
    def test_regular_triangle(self):
        cfg = realize(Graph.complete(3), 1.0, math.sqrt(2))
        ball = min_enclosing_ball(cfg.points)
        assert abs(ball.radius - math.sqrt(2 / 3)) < 1e-12

    def test_obtuse_triangle_diameter(self):
        ball = min_enclosing_ball([[0, 0], [4, 0], [1, 1]])
        assert np.allclose(ball.center, [2, 0], atol=1e-9)
        assert abs(ball.radius - 2.0) < 1e-12
        assert set(ball.support) == {0, 1}

    def test_unit_square(self):
        ball = min_enclosing_ball([[0, 0], [1, 0], [0, 1], [1, 1]])
        assert abs(ball.radius - math.sqrt(2) / 2) < 1e-12
        assert len(ball.support) == 4

    def test_single_point(self):
        ball = min_enclosing_ball([[3.0, 4.0]])
        assert ball.radius == 0.0

    def test_coincident_points(self):
        ball = min_enclosing_ball([[1.0, 2.0], [1.0, 2.0], [1.0, 2.0]])
        assert ball.radius < 1e-12

    def test_against_brute_force_2d(self, rng):
        for _ in range(40):
            n = rng.randrange(2, 9)
            pts = [[rng.uniform(-5, 5), rng.uniform(-5, 5)] for _ in range(n)]
            ball = min_enclosing_ball(pts)
            expect = brute_circle_2d(pts)
            assert abs(ball.radius - expect) < 1e-7
            # certificate and coverage
            scale = max(1.0, max(x * x + y * y for x, y in pts))
            assert ball.gap <= 10 * get_config().meb_gap_rtol * scale
            for p in pts:
                assert np.linalg.norm(np.asarray(p) - ball.center) <= ball.radius + 1e-9

    def test_high_dimension_simplex(self):
        cfg = realize(Graph.empty(9), math.sqrt(2) * 1.01, 1.0)
        ball = min_enclosing_ball(cfg.points)
        assert ball.gap <= 1e-12


# ---------------------------------------------------------------------------
# phi and its inverse
# ---------------------------------------------------------------------------


class TestPhi:
    def test_regular_simplex_value(self, rng):
        # At x = sqrt(2) every graph realizes the regular simplex.
        for _ in range(12):
            g = random_graph(rng, rng.randrange(2, 8))
            n = g.n
            assert abs(phi(g, SQRT2) - math.sqrt((n - 1) / n)) < 1e-10

    def test_path3_right_triangle(self):
        assert abs(phi(Graph.path(3), 2.0) - 1.0) < 1e-10

    def test_empty3_equilateral(self):
        assert abs(phi(Graph.empty(3), math.sqrt(3)) - 1.0) < 1e-10

    def test_monotone_on_grids(self, rng):
        violations = 0
        for _ in range(200):
            g = random_graph(rng, rng.randrange(2, 9))
            lo, hi = feasible_interval(g)
            x_hi = math.sqrt(2 * min(hi, 8.0))
            xs = np.linspace(SQRT2, x_hi, 20)
            vals = [phi(g, float(x)) for x in xs]
            diffs = np.diff(vals)
            violations += int((diffs < -1e-9).sum())
        assert violations == 0

    def test_matches_exact_ratio_when_center_interior(self, rng):
        # With the full point set on the ball boundary, the squared radius
        # equals twice the exact rational function of t = x^2/2.
        from fractions import Fraction

        checked = 0
        for _ in range(60):
            g = random_graph(rng, rng.randrange(2, 8))
            lo, hi = feasible_interval(g)
            x = rng.uniform(SQRT2 + 1e-6, math.sqrt(2 * min(hi, 6.0)) - 1e-6)
            cfg = realize(g, x, SQRT2)
            ball = min_enclosing_ball(cfg.points)
            if len(ball.support) < g.n:
                continue
            c_poly, m_poly = cm_polynomials(g)
            t = Fraction(x * x / 2).limit_denominator(10**12)
            f_val = -float(m_poly(t)) / (2.0 * float(c_poly(t)))
            assert abs(ball.radius**2 - 2.0 * f_val) < 1e-8
            checked += 1
        assert checked >= 10


class TestSolvePhi:
    def test_empty3(self):
        assert abs(solve_phi(Graph.empty(3), 1.0) - math.sqrt(3)) < 1e-9

    def test_empty_family(self):
        for n in range(2, 7):
            got = solve_phi(Graph.empty(n), 1.0)
            assert abs(got - math.sqrt(2 * n / (n - 1))) < 1e-9

    def test_square_hits_window_end(self):
        g = complete_multipartite(MultipartiteSignature((2, 2)))
        assert abs(solve_phi(g, 1.0) - 2.0) < 1e-9

    def test_intermediate_radius(self):
        # unique x with radius 0.95 for the empty triangle: scale the
        # circumscribed equilateral by 0.95
        got = solve_phi(Graph.empty(3), 0.95)
        assert abs(got - 0.95 * math.sqrt(3)) < 1e-9

    def test_complete_rejected(self):
        with pytest.raises(CompleteGraphError):
            solve_phi(Graph.complete(3), 1.0)

    def test_radius_out_of_range(self):
        with pytest.raises(ValueError):
            solve_phi(Graph.empty(3), 0.5)  # below sqrt(2/3)
        with pytest.raises(ValueError):
            solve_phi(Graph.empty(3), 1.5)


class TestBetaStar:
    def test_two_cliques_of_two(self):
        assert abs(beta_star_numeric(disjoint_cliques(2, 2)) - math.sqrt(3)) < 1e-9

    def test_two_cliques_of_four(self):
        assert abs(beta_star_numeric(disjoint_cliques(4, 4)) - math.sqrt(5 / 2)) < 1e-9

    def test_path3(self):
        assert abs(beta_star_numeric(Graph.path(3)) - 2.0) < 1e-9

    def test_exact_shortcut_square(self):
        g = complete_multipartite(MultipartiteSignature((2, 2)))
        assert abs(beta_star_numeric(g) - 2.0) < 1e-12

    def test_complete_rejected(self):
        with pytest.raises(CompleteGraphError):
            beta_star_numeric(Graph.complete(2))


# ---------------------------------------------------------------------------
# J-spherical embeddings and decomposition
# ---------------------------------------------------------------------------


class TestJSphericalEmbedding:
    def test_antipodal_pair(self):
        w = jspherical_embedding(Graph.empty(2))
        assert w.rank == 1
        d = w.distance_matrix()
        assert abs(d[0, 1] - 2.0) < 1e-9
        assert np.allclose(np.linalg.norm(w.points, axis=1), 1.0, atol=1e-9)

    def test_octahedron(self):
        g = complete_multipartite(MultipartiteSignature((2, 2, 2)))
        w = jspherical_embedding(g)
        assert w.rank == 3
        norms = np.linalg.norm(w.points, axis=1)
        assert float(np.abs(norms - 1).max()) < 1e-8
        d = w.distance_matrix()
        for i in range(6):
            partners = [j for j in range(6) if j != i and abs(d[i, j] - 2.0) < 1e-6]
            others = [j for j in range(6) if j != i and abs(d[i, j] - SQRT2) < 1e-6]
            assert len(partners) == 1 and len(others) == 4

    def test_pentagon(self):
        w = jspherical_embedding(Graph.cycle(5))
        assert w.rank == 4
        norms = np.linalg.norm(w.points, axis=1)
        assert float(np.abs(norms - 1).max()) < 1e-8
        d = w.distance_matrix()
        offdiag = d[~np.eye(5, dtype=bool)]
        assert offdiag.min() > SQRT2 - 1e-8

    def test_min_distance_bound(self, rng):
        # every point pair sits at >= sqrt(2) on the unit sphere
        from twodist.graphs import is_complete

        for _ in range(10):
            g = random_graph(rng, rng.randrange(2, 7))
            if is_complete(g):
                continue
            w = jspherical_embedding(g)
            d = w.distance_matrix()
            offdiag = d[~np.eye(g.n, dtype=bool)]
            assert offdiag.min() > SQRT2 - 1e-8
            assert float(np.abs(np.linalg.norm(w.points, axis=1) - 1).max()) < 1e-8

    def test_complete_rejected(self):
        with pytest.raises(CompleteGraphError):
            jspherical_embedding(Graph.complete(3))


class TestKuperbergDecompose:
    def test_right_isosceles_triangle(self):
        pts = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]])
        cfg = PointConfig(pts, SQRT2, 2.0, 2, 1e-7)
        fz = kuperberg_decompose(cfg)
        assert fz.k == 1
        types = dict(fz.factors)
        assert types[(0, 1)] == "I"
        assert types[(2,)] == "II"

    def test_octahedron(self):
        g = complete_multipartite(MultipartiteSignature((2, 2, 2)))
        fz = kuperberg_decompose(jspherical_embedding(g))
        assert fz.k == 3
        assert all(label == "I" for _, label in fz.factors)
        assert all(len(ix) == 2 for ix, _ in fz.factors)

    def test_regular_simplex_single_factor(self):
        w = jspherical_embedding(Graph.empty(4))
        fz = kuperberg_decompose(w)
        assert fz.k == 1
        assert fz.factors == (((0, 1, 2, 3), "I"),)

    def test_partition_matches_complement_components(self, rng):
        from twodist.graphs import is_complete

        for _ in range(12):
            g = random_graph(rng, rng.randrange(2, 7))
            if is_complete(g):
                continue
            w = jspherical_embedding(g)
            fz = kuperberg_decompose(w)
            got = sorted(sorted(ix) for ix, _ in fz.factors)
            expect = sorted(sorted(vs) for vs in complement_component_sets(g))
            assert got == expect

    def test_off_sphere_rejected(self):
        pts = np.array([[2.0, 0.0], [-2.0, 0.0]])
        cfg = PointConfig(pts, SQRT2, 4.0, 1, 1e-7)
        with pytest.raises(GeometricInconsistencyError):
            kuperberg_decompose(cfg)

    def test_close_points_rejected(self):
        theta = 0.3
        pts = np.array([[1.0, 0.0], [math.cos(theta), math.sin(theta)]])
        cfg = PointConfig(pts, SQRT2, 2.0, 2, 1e-7)
        with pytest.raises(GeometricInconsistencyError):
            kuperberg_decompose(cfg)

    def test_type_count_identity(self, rng):
        # |S| = rank + (number of Type I blocks)
        from twodist.graphs import is_complete

        for _ in range(10):
            g = random_graph(rng, rng.randrange(2, 7))
            if is_complete(g):
                continue
            w = jspherical_embedding(g)
            fz = kuperberg_decompose(w)
            assert g.n == w.rank + fz.k
