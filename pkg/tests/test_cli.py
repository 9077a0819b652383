"""Command-line driver behavior: verbs, exit codes, output placement."""
import shutil
from pathlib import Path

import pytest

from tymc import cli

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "tymc" / "fixtures"

MYMULT_ARGS = "realarray 2 2\n1 2\n3 4\nrealarray 2 2\n5 6\n7 8\n"
BROKEN = "function int z = broken()\n  z = q\nend\n"


def run_cli(argv, capsys):
    code = cli.main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def sans_warnings(err: str) -> str:
    return "".join(
        line for line in err.splitlines(keepends=True) if ": warning: " not in line
    )


def test_compile_octave_to_out_dir(tmp_path, capsys):
    code, out, err = run_cli(
        ["compile", str(FIXTURES / "mymult.tm"), "--target", "octave",
         "--out-dir", str(tmp_path)],
        capsys,
    )
    assert code == 0
    written = tmp_path / "mymult.cpp"
    assert written.exists()
    assert str(written) in out
    assert "DEFUN_DLD (mymult" in written.read_text()


def test_compile_defaults_beside_input(tmp_path, capsys):
    src = tmp_path / "mymult.tm"
    shutil.copyfile(FIXTURES / "mymult.tm", src)
    code, out, _ = run_cli(["compile", str(src)], capsys)
    assert code == 0
    assert (tmp_path / "mymult.cpp").exists()


def test_compile_standalone_target(tmp_path, capsys):
    code, _, _ = run_cli(
        ["compile", str(FIXTURES / "mymult.tm"), "--target", "standalone",
         "--out-dir", str(tmp_path)],
        capsys,
    )
    assert code == 0
    text = (tmp_path / "mymult.cpp").read_text()
    assert "TYM_DEFUN(mymult)" in text and "TYM_MAIN(mymult)" in text


def test_compile_output_named_after_function_with_stem_warning(tmp_path, capsys):
    src = tmp_path / "other.tm"
    shutil.copyfile(FIXTURES / "mymult.tm", src)
    code, _, err = run_cli(["compile", str(src)], capsys)
    assert code == 0
    assert (tmp_path / "mymult.cpp").exists()
    assert "warning" in err and "other" in err and "mymult" in err


def test_compile_diagnostics_exit_1(tmp_path, capsys):
    src = tmp_path / "broken.tm"
    src.write_text(BROKEN)
    code, out, err = run_cli(["compile", str(src)], capsys)
    assert code == 1
    assert not (tmp_path / "broken.cpp").exists()
    assert "UseBeforeDecl" in err
    assert len([l for l in err.splitlines() if "error" in l]) == 1


def test_check_ok(capsys):
    code, out, _ = run_cli(["check", str(FIXTURES / "mymult.tm")], capsys)
    assert code == 0
    assert out.startswith("ok: mymult")


def test_check_reports_warnings(tmp_path, capsys):
    src = tmp_path / "warny.tm"
    src.write_text(
        "function int z = warny(real r)\n  z = r\nend\n"
    )
    code, out, err = run_cli(["check", str(src)], capsys)
    assert code == 0
    assert "NarrowingStore" in err
    assert "1 warning" in out


def test_check_broken_exit_1(tmp_path, capsys):
    src = tmp_path / "broken.tm"
    src.write_text(BROKEN)
    code, _, err = run_cli(["check", str(src)], capsys)
    assert code == 1
    assert "UseBeforeDecl" in err


def test_interp_mymult(tmp_path, capsys):
    args = tmp_path / "args.txt"
    args.write_text(MYMULT_ARGS)
    code, out, err = run_cli(
        ["interp", str(FIXTURES / "mymult.tm"), "--args", str(args)], capsys
    )
    assert code == 0
    assert out == "array 2 2\n19 22\n43 50\n"
    assert sans_warnings(err) == ""


def test_interp_error_return_exit_2(tmp_path, capsys):
    args = tmp_path / "args.txt"
    args.write_text("realarray 2 2\n1 2\n3 4\nrealarray 3 2\n5 6\n7 8\n9 10\n")
    code, out, err = run_cli(
        ["interp", str(FIXTURES / "mymult.tm"), "--args", str(args)], capsys
    )
    assert code == 2
    assert out == ""
    assert sans_warnings(err) == "error: incompatible dimensions\n"


def test_interp_addslice_guard(tmp_path, capsys):
    args = tmp_path / "args.txt"
    args.write_text("intarray 2 2\n1 1\n1 1\nintarray 2 2\n1 1\n1 1\n")
    code, _, err = run_cli(
        ["interp", str(FIXTURES / "addslice.tm"), "--args", str(args)], capsys
    )
    assert code == 2
    assert err == "error: Matrices should be of size at least 3x3\n"


def test_interp_scalar_result(tmp_path, capsys):
    src = tmp_path / "addone.tm"
    src.write_text("function int z = addone(int a)\n  z = a + 1\nend\n")
    args = tmp_path / "args.txt"
    args.write_text("int 41\n")
    code, out, _ = run_cli(["interp", str(src), "--args", str(args)], capsys)
    assert code == 0
    assert out == "42\n"


def test_interp_real_result_full_precision(tmp_path, capsys):
    src = tmp_path / "tenth.tm"
    src.write_text("function real z = tenth(real a)\n  z = a / 10.0\nend\n")
    args = tmp_path / "args.txt"
    args.write_text("real 1\n")
    code, out, _ = run_cli(["interp", str(src), "--args", str(args)], capsys)
    assert code == 0
    assert out == "0.10000000000000001\n"


def test_interp_arg_count_mismatch(tmp_path, capsys):
    args = tmp_path / "args.txt"
    args.write_text("realarray 2 2\n1 2\n3 4\n")
    code, _, err = run_cli(
        ["interp", str(FIXTURES / "mymult.tm"), "--args", str(args)], capsys
    )
    assert code == 2
    assert sans_warnings(err) == "error: invalid number of input params\n"


def test_interp_arg_type_mismatch(tmp_path, capsys):
    src = tmp_path / "wanti.tm"
    src.write_text("function int z = wanti(int a)\n  z = a\nend\n")
    args = tmp_path / "args.txt"
    args.write_text("real 2.5\n")
    code, _, err = run_cli(["interp", str(src), "--args", str(args)], capsys)
    assert code == 2
    assert err == "error: invalid type of input parameters\n"


def test_interp_malformed_args_file(tmp_path, capsys):
    src = tmp_path / "f.tm"
    src.write_text("function int z = f(int a)\n  z = a\nend\n")
    args = tmp_path / "args.txt"
    args.write_text("intarray 2 2\n1 2\n")
    code, _, err = run_cli(["interp", str(src), "--args", str(args)], capsys)
    assert code == 2
    assert err.startswith("error: ")


def test_interp_diagnostics_exit_1(tmp_path, capsys):
    src = tmp_path / "broken.tm"
    src.write_text(BROKEN)
    code, _, err = run_cli(["interp", str(src)], capsys)
    assert code == 1


def test_missing_input_file_exit_1(tmp_path, capsys):
    code, _, err = run_cli(["check", str(tmp_path / "nope.tm")], capsys)
    assert code == 1
    assert "error" in err


def test_run_missing_runtime_header_exit_3(tmp_path, capsys):
    args = tmp_path / "args.txt"
    args.write_text(MYMULT_ARGS)
    code, _, err = run_cli(
        ["run", str(FIXTURES / "mymult.tm"), "--args", str(args),
         "--runtime-include", str(tmp_path)],
        capsys,
    )
    assert code == 3
    assert "build failure" in err


def test_run_missing_compiler_exit_3(tmp_path, capsys):
    # fake header so discovery succeeds and the compiler launch itself fails
    (tmp_path / "tym_runtime.hpp").write_text("")
    args = tmp_path / "args.txt"
    args.write_text(MYMULT_ARGS)
    code, _, err = run_cli(
        ["run", str(FIXTURES / "mymult.tm"), "--args", str(args),
         "--runtime-include", str(tmp_path),
         "--cxx", str(tmp_path / "no-such-compiler")],
        capsys,
    )
    assert code == 3
    assert "build failure" in err


def test_unknown_verb_rejected(capsys):
    with pytest.raises(SystemExit):
        cli.main(["frobnicate"])
