import json
import os
import subprocess
import sys

import pytest

MODULE = [sys.executable, "-m", "meridian.cli"]


def run(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(MODULE + list(args), capture_output=True,
                          text=True, env=env)


class TestBasics:
    def test_free2_abelianize(self):
        out = run("abelianize", "--preset", "free2")
        assert out.returncode == 0
        assert out.stdout == "Z^2\n"

    def test_orbifold_source(self):
        out = run("abelianize", "--orbifold", "g=0 k=0 m=2,5,10")
        assert out.stdout == "Z/10\n"

    def test_order_preset(self):
        out = run("order", "--preset", "degtyarev-projective")
        assert out.returncode == 0
        assert out.stdout == "order 320\n"

    def test_zvk(self):
        out = run("zvk", "degtyarev-newbraid", "--simplify")
        assert out.returncode == 0
        assert "gens" in out.stdout and "rel" in out.stdout

    def test_lcs(self):
        out = run("lcs", "--preset", "genus2")
        assert out.stdout.splitlines() == [
            "gamma_1/gamma_2 = Z^4",
            "gamma_2/gamma_3 = Z^5",
            "gamma_3/gamma_4 = Z^16",
        ]

    def test_charvar_orbifold(self):
        out = run("charvar", "--orbifold", "g=0 k=0 m=2,2,5,5")
        lines = out.stdout.splitlines()
        assert "V1 = mu10-primitive" in lines
        assert "V2 = mu10-primitive" in lines
        assert "V3 = {}" in lines

    def test_subgroup(self):
        out = run("subgroup", "--preset", "p1-2-5-10",
                  "--spec", "kernel Z/10 x->5 y->8")
        assert out.returncode == 0
        assert "index 10" in out.stdout
        assert "abelianization Z^4" in out.stdout

    def test_verify_curves(self):
        out = run("verify-curves")
        assert out.returncode == 0
        assert out.stdout.count("PASS") == 4
        assert "FAIL" not in out.stdout

    def test_charvar_xt_preset(self):
        out = run("charvar", "--preset", "degtyarev-affine-xt")
        assert "V1 = {1} u mu10-primitive" in out.stdout.splitlines()

    def test_center(self):
        out = run("center", "--preset", "degtyarev-projective")
        assert out.stdout == "order 320\ncenter of order 4: Z/2 x Z/2\n"


class TestExitCodes:
    def test_negative_answer_is_exit_one(self):
        out = run("homs", "--preset", "c-2-3", "--target", "cyclic-5")
        assert out.returncode == 1

    def test_positive_answer_is_exit_zero(self):
        out = run("homs", "--preset", "degtyarev-affine",
                  "--target", "dihedral-10")
        assert out.returncode == 0
        assert "20" in out.stdout.splitlines()[0]

    def test_input_error_is_exit_two(self):
        out = run("abelianize", "/nonexistent/file.grp")
        assert out.returncode == 2
        out = run("order")  # no source given
        assert out.returncode == 2

    def test_resource_limit_is_exit_three(self):
        out = run("order", "--preset", "free2", "--max-cosets", "100")
        assert out.returncode == 3

    def test_env_var_cap(self):
        out = run("order", "--preset", "free2",
                  env_extra={"MERIDIAN_MAX_COSETS": "100"})
        assert out.returncode == 3

    def test_obstruct_negative(self):
        out = run("obstruct", "--finite", "320", "--ab", "Z/5")
        assert out.returncode == 1
        out = run("obstruct", "--finite", "12", "--ab", "Z/4")
        assert out.returncode == 0
        assert "(2,2,3) order 6: survives" in out.stdout


class TestDeterminismAndJson:
    @pytest.mark.parametrize("args", [
        ("pipeline", "--preset", "degtyarev"),
        ("charvar", "--preset", "degtyarev-affine"),
        ("homs", "--preset", "degtyarev-affine", "--target", "dihedral-10"),
        ("obstruct", "--finite", "12", "--ab", "Z/4"),
    ])
    def test_byte_identical_reruns(self, args):
        first = run(*args)
        second = run(*args)
        assert first.stdout == second.stdout
        assert first.returncode == second.returncode

    def test_json_documents(self):
        out = run("--json", "abelianize", "--preset", "degtyarev-projective")
        doc = json.loads(out.stdout)
        assert doc["schema"] == 1
        assert doc["display"] == "Z/5"
        out = run("--json", "pipeline", "--preset", "degtyarev")
        doc = json.loads(out.stdout)
        assert doc["schema"] == 1
        assert doc["projective_order"] == 320
        assert doc["meridian5_order"] == 320
        assert doc["center"] == "Z/2 x Z/2"
        assert doc["obstruction"] == "no-surjection"

    def test_pipeline_text(self):
        out = run("pipeline", "--preset", "degtyarev")
        assert out.returncode == 0
        text = out.stdout
        assert "abelianization: Z" in text
        assert "projective quotient (infinity meridian added): order 320" in text
        assert "meridian^5 quotient: order 320" in text
        assert "center: order 4, Z/2 x Z/2" in text
        assert "V1 = {1} u mu10-primitive" in text
        assert "V2 = {}" in text
        assert "infinite-orbifold obstruction: no-surjection" in text
        assert "finite-orbifold obstruction for the projective group: no-target" in text

    def test_pipeline_on_table1(self):
        out = run("pipeline", "--preset", "degtyarev-table1")
        assert out.returncode == 0
        assert "projective quotient (infinity meridian added): order 320" in out.stdout
