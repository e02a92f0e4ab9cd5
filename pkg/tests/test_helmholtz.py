import numpy as np
import pytest

from vocalis.common.errors import MeshError, SolverError
from vocalis.features.geometry.models import BoundaryTag, TetMesh
from vocalis.features.geometry.primitives import make_box_mesh, make_cylinder_mesh, make_tube
from vocalis.features.helmholtz.io import format_resonances, load_resonances
from vocalis.features.helmholtz.models import EigenSettings, HelmholtzParams, Method, Mode, ResonanceSet
from vocalis.features.helmholtz.solver import assemble, assemble_full, first_two, resonances
from vocalis.features.webster.models import WebsterParams
from vocalis.features.webster.solver import webster_resonances

RIGID = HelmholtzParams(c=350.0, alpha=0.0, glottis_admittance=0.0)


@pytest.fixture(scope="module")
def box():
    return make_box_mesh(0.17, 0.03, 0.03, 0.0075)


class TestAssembly:
    def test_mass_sums_to_volume(self, cube_mesh):
        mass, _, _ = assemble_full(cube_mesh, RIGID)
        assert mass.sum() == pytest.approx(cube_mesh.volume(), rel=1e-12)

    def test_stiffness_annihilates_constants(self, cube_mesh):
        _, _, stiffness = assemble_full(cube_mesh, RIGID)
        assert np.abs(stiffness @ np.ones(cube_mesh.n_vertices)).max() <= 1e-9 * abs(stiffness).max()

    def test_matrices_are_symmetric(self, cube_mesh):
        params = HelmholtzParams(c=350.0, alpha=0.01, glottis_admittance=1.0)
        for matrix in assemble_full(cube_mesh, params):
            assert abs(matrix - matrix.T).max() <= 1e-12 * abs(matrix).max()

    def test_damping_integrates_boundary_areas(self, cube_mesh):
        params = HelmholtzParams(c=2.0, alpha=0.5, glottis_admittance=1.0)
        _, damping, _ = assemble_full(cube_mesh, params)
        # c^2 alpha |wall| + c beta |glottis|
        assert damping.sum() == pytest.approx(4.0 * 0.5 * 4.0 + 2.0 * 1.0 * 1.0)

    def test_mouth_vertices_are_eliminated(self, cube_mesh):
        mass, _, _, free = assemble(cube_mesh, RIGID)
        assert set(free.tolist()) == {0, 2, 4, 6}
        assert mass.shape == (4, 4)

    def test_missing_mouth(self, cube_mesh):
        tags = np.where(cube_mesh.boundary_tags == int(BoundaryTag.MOUTH), int(BoundaryTag.WALL), cube_mesh.boundary_tags)
        mesh = TetMesh(cube_mesh.vertices, cube_mesh.tets, cube_mesh.boundary_tris, tags)
        with pytest.raises(MeshError, match="mouth"):
            assemble(mesh, RIGID)


class TestResonances:
    def test_scaling_the_domain_scales_frequencies(self, cube_mesh):
        small = resonances(cube_mesh, RIGID, k=2).frequencies
        large = resonances(cube_mesh.scaled(2.0), RIGID, k=2).frequencies
        np.testing.assert_allclose(large, small / 2.0, rtol=1e-3)

    def test_rigid_lossless_modes_are_undamped(self, cube_mesh):
        for lam in resonances(cube_mesh, RIGID, k=2).eigenvalues:
            assert abs(lam.real) <= 1e-6 * abs(lam)

    def test_wall_dissipation_damps_every_mode(self, cube_mesh):
        lossy = resonances(cube_mesh, HelmholtzParams(c=350.0, alpha=2e-3, glottis_admittance=0.0), k=2)
        assert np.all(lossy.eigenvalues.real < 0)

    def test_first_two_needs_two_modes(self):
        rs = ResonanceSet(Method.H_R, (Mode(2j * np.pi * 500.0),))
        with pytest.raises(SolverError):
            first_two(rs)

    @pytest.mark.slow
    def test_quarter_wave_duct(self, box):
        rs = resonances(box, RIGID, k=2)
        assert rs.frequencies[0] == pytest.approx(350.0 / (4 * 0.17), rel=0.02)
        assert rs.frequencies[1] == pytest.approx(3 * 350.0 / (4 * 0.17), rel=0.02)

    @pytest.mark.slow
    def test_wall_dissipation_on_the_duct(self, box):
        lossless = resonances(box, RIGID, k=2)
        lossy = resonances(box, HelmholtzParams(c=350.0, alpha=2e-6, glottis_admittance=0.0), k=2)
        assert np.all(lossy.eigenvalues.real < lossless.eigenvalues.real)
        np.testing.assert_allclose(lossy.frequencies, lossless.frequencies, rtol=0.02)

    @pytest.mark.slow
    def test_refining_the_duct_reduces_the_error(self):
        exact = 350.0 / (4 * 0.17)
        errors = [
            abs(resonances(make_box_mesh(0.17, 0.03, 0.03, h), RIGID, k=2).frequencies[0] - exact) / exact
            for h in (0.015, 0.0075, 0.00375)
        ]
        assert errors[0] > errors[1] > errors[2]

    @pytest.mark.slow
    def test_fine_duct_hits_the_quarter_wave_series(self):
        mesh = make_box_mesh(0.17, 0.03, 0.03, 0.00375)
        assert mesh.n_tets > 15000
        f1, f2 = first_two(resonances(mesh, HelmholtzParams(c=350.0, alpha=2e-6, glottis_admittance=0.0), k=2))
        assert f1 == pytest.approx(514.7, rel=0.02)
        assert f2 == pytest.approx(1544.1, rel=0.02)

    @pytest.mark.slow
    def test_cylinder_agrees_with_the_uniform_tube(self):
        mesh = make_cylinder_mesh(0.175, 0.01, 0.005)
        h_r = resonances(mesh, RIGID, k=3, settings=EigenSettings(k=3))
        w_r = webster_resonances(make_tube("cylinder", 0.175, np.pi * 0.01**2, 20), WebsterParams(350.0, 0.0, 0.0), k=3)
        np.testing.assert_allclose(h_r.frequencies, w_r.frequencies, rtol=0.05)


def test_resonance_csv_round_trip(tmp_path):
    rs = ResonanceSet(Method.H_R, (Mode(-3.0 + 2j * np.pi * 512.0), Mode(-8.0 + 2j * np.pi * 1530.0)))
    path = tmp_path / "h_r.csv"
    path.write_text(format_resonances(rs, ","), encoding="utf-8")
    loaded = load_resonances(path)
    np.testing.assert_allclose(loaded.frequencies, rs.frequencies, rtol=1e-6)
