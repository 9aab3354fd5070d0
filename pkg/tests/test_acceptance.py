"""Acceptance criteria, one test per criterion.

Each test records a one-line verdict; the lines are printed in the pytest
terminal summary, or directly when this file is run as a script.
"""

import io
import itertools
import json
import random
import time

import pytest

from corruption import mutations
from rfg import certificates as certs
from rfg.cli import main
from rfg.covers import canonical_complete, check_local_isometry, make_cover, path_partial, separates
from rfg.errors import CertificateError, CompletionCommutationFailure
from rfg.oracle import exact_divisibility, subgroup_inequality_check
from rfg.raag import ball
from rfg.sampling import random_locally_isometric
from rfg.selftest import FIXTURES
from rfg.separation import separating_cover
from rfg.speciallinear import (
    congruence_witness,
    g_n,
    heisenberg3_enumerated,
    heisenberg_divisibility,
    lcm_upto,
    slk_bounds_table,
)

VERDICTS = {}


def record(n, ok, detail):
    VERDICTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    return ok


ORACLE_GRAPHS = ("Z", "F2", "Z2", "P3")


def _radius(g):
    return 8 if g.rank <= 2 else 6


def test_criterion_1_constructive_bound():
    start = time.perf_counter()
    failures, count = [], 0
    for name, g in FIXTURES.items():
        for form in ball(g, _radius(g)):
            count += 1
            w = form.letters
            try:
                cert = separating_cover(g, w)
                cover = cert.cover
                make_cover(g, cover.degree, {v: cover.perm(v) for v in g.vertices})
                ok = cert.degree <= len(w) + 1 and separates(cover, w)
            except Exception as e:  # any exception is a failure of the criterion
                ok = False
                form = f"{form.format(g)} ({type(e).__name__})"
            if not ok:
                failures.append(f"{name}:{form}")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 600
    record(1, ok, f"{count} elements, {len(failures)} failures, {elapsed:.1f}s")
    assert not failures, failures[:5]
    assert elapsed < 600


def _oracle_range():
    for name in ORACLE_GRAPHS:
        g = FIXTURES[name]
        for form in ball(g, 4):
            yield name, g, form.letters


def test_criterion_2_oracle_bound():
    bad = [(n, w) for n, g, w in _oracle_range() if exact_divisibility(g, w).value > len(w) + 1]
    exact = (exact_divisibility(FIXTURES["Z"], "a^6").value == 4
             and exact_divisibility(FIXTURES["F2"], "a b").value == 2
             and exact_divisibility(FIXTURES["Z2"], "a b").value == 2)
    record(2, not bad and exact, f"{len(bad)} bound violations, exact values {'match' if exact else 'differ'}")
    assert not bad and exact


def test_criterion_3_sandwich():
    total, bad = 0, []
    for name, g, w in _oracle_range():
        total += 1
        d = exact_divisibility(g, w).value
        c = separating_cover(g, w).degree
        if d > c:
            bad.append((name, w, d, c))
    record(3, not bad, f"oracle <= certificate in {total - len(bad)}/{total} cases")
    assert not bad


def test_criterion_4_completion():
    rng = random.Random(2024)
    graphs = list(FIXTURES.values())
    fails = 0
    for _ in range(1000):
        g = rng.choice(graphs)
        pc = random_locally_isometric(g, rng)
        assert check_local_isometry(g, pc).ok
        try:
            canonical_complete(g, pc)
        except CompletionCommutationFailure:
            fails += 1
    z2 = FIXTURES["Z2"]
    interval = path_partial(z2, "a b")
    flagged = (1, ("a", -1), ("b", 1)) in check_local_isometry(z2, interval).violations
    with pytest.raises(CompletionCommutationFailure):
        canonical_complete(z2, interval)
    record(4, fails == 0 and flagged,
           f"{1000 - fails}/1000 completions commute; interval a b flagged and fails commutation")
    assert fails == 0 and flagged


def test_criterion_5_slk_sandwich():
    start = time.perf_counter()
    table = slk_bounds_table(3, 20)
    elapsed = time.perf_counter() - start
    rows = {r.n: r for r in table.rows}
    ordered = all(r.lower <= r.upper for r in table.rows)
    exact = (rows[4].lower, rows[4].upper) == (25, 31) and (rows[6].lower, rows[6].upper) == (49, 57)
    lo_ok = 1.6 <= table.lower_slope <= 2.4
    hi_ok = 1.6 <= table.upper_slope <= 2.4
    ok = ordered and exact and lo_ok and hi_ok and elapsed < 60
    record(5, ok, f"lower<=upper {ordered}, rows n=4,6 exact {exact}, slopes lower "
                  f"{table.lower_slope:.4f} upper {table.upper_slope:.4f} (need [1.6, 2.4]), "
                  f"{elapsed:.1f}s")
    assert ordered and exact and elapsed < 60
    assert lo_ok, table.lower_slope
    assert hi_ok, table.upper_slope


def test_criterion_6_heisenberg():
    low = all(heisenberg_divisibility(k, lcm_upto(n))[0] >= n ** (k - 1)
              for k in (3, 4) for n in range(1, 9))
    same = all(heisenberg3_enumerated(lcm_upto(n))[0] == heisenberg_divisibility(3, lcm_upto(n))[0]
               for n in range(1, 7))
    record(6, low and same, f"lower bound holds {low}; program equals enumeration {same}")
    assert low and same


def _induced_subsets(g):
    for r in range(1, g.rank + 1):
        for names in itertools.combinations(g.vertices, r):
            yield names


def test_criterion_7_subgroup_inequality():
    total, bad = 0, []
    for name in ("P3", "C4"):
        g = FIXTURES[name]
        for names in _induced_subsets(g):
            sub = g.induced(names)
            for form in ball(sub, 3):
                total += 1
                if not subgroup_inequality_check(g, names, form.format(sub)):
                    bad.append((name, names, form.format(sub)))
    record(7, not bad, f"{total - len(bad)}/{total} pairs satisfy the inequality")
    assert not bad


def _emit(argv, path):
    with open(path, "w") as fh:
        code = main(argv, fh, io.StringIO())
    return code


def test_criterion_8_persistence(tmp_path):
    emitted, verified = 0, 0
    docs = []
    for name, g in FIXTURES.items():
        inline = json.dumps(g.to_json())
        for form in ball(g, 2):
            path = tmp_path / f"{name}-{emitted}.json"
            assert _emit(["witness", "--graph-inline", inline, "--word", form.format(g)], path) == 0
            emitted += 1
            verified += main(["verify", str(path)], io.StringIO(),
                             io.StringIO()) == 0
            if emitted % 5 == 0:
                docs.append(json.loads(path.read_text()))
    for n in range(1, 11):
        path = tmp_path / f"slk-{n}.json"
        assert _emit(["witness", "--matrix", json.dumps(g_n(3, n).to_json())], path) == 0
        emitted += 1
        verified += main(["verify", str(path)], io.StringIO(), io.StringIO()) == 0
        docs.append(json.loads(path.read_text()))
    corrupt, rejected = 0, 0
    for i, doc in enumerate(docs):
        for j, (label, bad) in enumerate(mutations(doc)):
            corrupt += 1
            path = tmp_path / f"bad-{i}-{j}.json"
            path.write_text(json.dumps(bad))
            rejected += main(["verify", str(path)], io.StringIO(),
                             io.StringIO()) == 1
    ok = verified == emitted and rejected == corrupt
    record(8, ok, f"{verified}/{emitted} emitted certificates verify; "
                  f"{rejected}/{corrupt} single-field corruptions rejected")
    assert verified == emitted
    assert rejected == corrupt


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
