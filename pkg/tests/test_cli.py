import json
import math

import pytest

from tdq.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    lines = [l for l in text.splitlines() if l and not l.startswith("#")]
    header = lines[0].split(",")
    rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
    return header, rows


def column(header, rows, name):
    idx = header.index(name)
    return [row[idx] for row in rows]


class TestRho:
    def test_header_and_defaults(self, capsys):
        code, out, _ = run(capsys, "rho")
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("#")
        assert lines[1] == "t,sigma0,rho,rho_dot,L,omega_sq"
        header, rows = parse_csv(out)
        first = dict(zip(header, rows[0]))
        assert first["t"] == 0.0
        assert first["L"] == 1.0

    def test_lc_limit_constant_rho(self, capsys):
        code, out, _ = run(capsys, "rho", "--sigma0", "0")
        assert code == 0
        header, rows = parse_csv(out)
        assert all(abs(v - 1.0) < 1e-12 for v in column(header, rows, "rho"))

    def test_numeric_seeded_path(self, capsys):
        code, out, _ = run(capsys, "rho", "--sigma0", "2", "--steps", "21",
                           "--seed-from-analytic")
        assert code == 0
        _, analytic_out, _ = run(capsys, "rho", "--sigma0", "2", "--steps", "21")
        header, rows = parse_csv(out)
        _, rows_ref = parse_csv(analytic_out)
        for got, want in zip(column(header, rows, "rho"),
                             column(header, rows_ref, "rho")):
            assert got == pytest.approx(want, abs=1e-6)

    def test_numeric_seeded_path_with_late_start(self, capsys):
        code, out, _ = run(capsys, "rho", "--sigma0", "2", "--t0", "0.5",
                           "--steps", "11", "--seed-from-analytic")
        assert code == 0
        _, analytic_out, _ = run(capsys, "rho", "--sigma0", "2", "--t0", "0.5",
                                 "--steps", "11")
        header, rows = parse_csv(out)
        _, rows_ref = parse_csv(analytic_out)
        for got, want in zip(column(header, rows, "rho"),
                             column(header, rows_ref, "rho")):
            assert got == pytest.approx(want, abs=1e-6)

    def test_sigma_sweep_sorted(self, capsys):
        code, out, _ = run(capsys, "rho", "--sigma0", "3,0.5", "--steps", "3")
        assert code == 0
        header, rows = parse_csv(out)
        sigmas = column(header, rows, "sigma0")
        assert sigmas == sorted(sigmas)


class TestObservables:
    def test_columns_and_bounds(self, capsys):
        code, out, _ = run(capsys, "observables", "--steps", "11")
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["t", "sigma0", "n", "q2", "phi2", "dq_dphi",
                          "energy", "energy_per_level"]
        ns = column(header, rows, "n")
        for bound, value in zip(ns, column(header, rows, "dq_dphi")):
            assert value >= (bound + 0.5) - 1e-12

    def test_energy_per_level_matches_energy(self, capsys):
        code, out, _ = run(capsys, "observables", "--n", "0,2", "--steps", "5")
        assert code == 0
        header, rows = parse_csv(out)
        for row in rows:
            r = dict(zip(header, row))
            assert r["energy_per_level"] == pytest.approx(
                r["energy"] / (r["n"] + 0.5), rel=1e-15)


class TestDensity:
    def test_profiles_normalized(self, capsys):
        code, out, _ = run(capsys, "density", "--qmin", "-8", "--qmax", "8",
                           "--qpoints", "801")
        assert code == 0
        header, rows = parse_csv(out)
        by_time = {}
        for row in rows:
            r = dict(zip(header, row))
            by_time.setdefault(r["t"], []).append((r["q"], r["P"]))
        assert len(by_time) == 3
        for points in by_time.values():
            qs = [p[0] for p in points]
            ps = [p[1] for p in points]
            trapezoid = sum((ps[i] + ps[i + 1]) * (qs[i + 1] - qs[i]) / 2.0
                            for i in range(len(qs) - 1))
            assert trapezoid == pytest.approx(1.0, abs=1e-6)

    def test_narrow_grid_warns_on_stderr(self, capsys):
        code, _, err = run(capsys, "density", "--qmin", "-0.5", "--qmax", "0.5")
        assert code == 0
        assert "warning" in err.lower()


class TestInfo:
    def test_columns_and_complexity_constancy(self, capsys):
        code, out, _ = run(capsys, "info", "--steps", "11")
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["t", "sigma0", "n", "S_closed", "S_quad", "H",
                          "D_closed", "D_quad", "C"]
        cs = column(header, rows, "C")
        assert max(cs) - min(cs) < 1e-7
        target = math.sqrt(math.e / 2.0)
        assert all(abs(c - target) < 1e-7 for c in cs)

    def test_closed_matches_quad_for_ground_state(self, capsys):
        code, out, _ = run(capsys, "info", "--steps", "5")
        assert code == 0
        header, rows = parse_csv(out)
        for row in rows:
            r = dict(zip(header, row))
            assert r["S_closed"] == pytest.approx(r["S_quad"], abs=1e-8)
            assert r["D_closed"] == pytest.approx(r["D_quad"], rel=1e-8)


class TestFormatsAndDeterminism:
    def test_json_round_trip(self, capsys):
        code, out, _ = run(capsys, "rho", "--steps", "4", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["columns"] == ["t", "sigma0", "rho", "rho_dot", "L",
                                      "omega_sq"]
        assert len(payload["rows"]) == 4

    @pytest.mark.parametrize("argv", [
        ("rho", "--sigma0", "2,3", "--steps", "7"),
        ("info", "--steps", "4"),
        ("density", "--qpoints", "51"),
        ("observables", "--steps", "5", "--format", "json"),
    ])
    def test_byte_identical_reruns(self, argv, tmp_path):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for path in paths:
            assert main(list(argv) + ["--out", str(path)]) == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()


class TestExitCodes:
    def test_invalid_window(self, capsys):
        code, _, err = run(capsys, "rho", "--t0", "2", "--t1", "1")
        assert code == 2
        assert "t1" in err

    def test_invalid_steps(self, capsys):
        code, _, err = run(capsys, "rho", "--steps", "1")
        assert code == 2

    def test_envelope_violation_names_offender(self, capsys):
        code, _, err = run(capsys, "rho", "--sigma0", "2", "--t1", "80")
        assert code == 2
        assert "sigma0=2" in err

    def test_negative_sigma_rejected(self, capsys):
        code, _, err = run(capsys, "rho", "--sigma0", "-1")
        assert code == 2

    def test_unknown_command_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["not-a-command"])
        assert exc.value.code == 2


class TestVerify:
    def test_default_suite_passes(self, capsys):
        code, out, _ = run(capsys, "verify")
        assert code == 0
        assert "FAIL" not in out
        assert "checks passed" in out
        # measured ground-state complexity is reported next to its target
        assert "sqrt(e/2)" in out

    def test_corrupted_tolerance_fails(self, capsys):
        code, out, _ = run(capsys, "verify", "--tol-verify", "1e-4")
        assert code == 1
        assert "FAIL" in out
        assert "failed checks" in out

    def test_informational_checks_never_fail(self, capsys):
        code, out, _ = run(capsys, "verify", "--tol-verify", "1e-4")
        assert "INFO entropy_closed_vs_quadrature_higher_n" in out
        for line in out.splitlines():
            if "entropy_closed_vs_quadrature_higher_n" in line:
                assert line.startswith("INFO")
