"""Smoke test for the flipcheck_py extension module."""

import json

import flipcheck_py as fc


def main():
    assert fc.cohomology("Sigma{-2,-2}Uv", 4) == {}
    assert fc.cohomology("S{1}Uv", 5) == {0: 5}
    assert fc.ext("S{1}Uv(1H-1h)", "S{2}Uv", 5, space="e") == {0: 1}
    assert fc.ext("O", "O(1H)", 5) == {0: 10}

    obj = fc.EObject("S{2}Uv(1H-1h)")
    assert obj == fc.EObject(obj.to_expr())
    assert obj.twist(0, 1) == fc.EObject("S{2}Uv(1H)")

    report = fc.verify(3, "odd", lemma="mut")
    assert report.exit_code == 0, report.to_text()
    assert report.summary["pass"] == len(report) == 6
    assert json.loads(report.to_json())["run"] == {"N": 7, "parity": "odd"}
    assert all(c["status"] == "pass" for c in report.claims)

    van6 = fc.verify(2, "odd", lemma="van.6")
    assert van6.exit_code == 1
    assert van6.summary["indeterminate"] == 0

    final = fc.replay("N 5\nexpand A at 0\nexpand A(1H) at 2\n")
    assert [o.to_expr() for o in final] == ["O", "S{1}Uv", "O(1H)", "S{1}Uv(1H)"]

    try:
        fc.EObject("Sigma{0,1}Uv")
    except ValueError:
        pass
    else:
        raise AssertionError("weight violation accepted")

    assert "S" in fc.chessboard(3)
    print("flipcheck_py smoke test ok")


if __name__ == "__main__":
    main()
