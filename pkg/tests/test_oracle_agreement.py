"""Every frozen value from the independent knot Floer oracle must be reproduced."""

import pytest

from satfloer import absolute_alexander, alexander_polynomial, assemble, minimize

from conftest import companion, oracle, oracle_entry, pattern

KEYS = sorted(oracle()["values"])


@pytest.mark.parametrize("key", KEYS)
def test_rank_dims_and_polynomial(key):
    p, c = key.split("|")
    want = oracle_entry(p, c)
    g = absolute_alexander(minimize(assemble(pattern(p), companion(c))))
    assert g.total_dim == want["rank"]
    assert g.dims() == want["dims"]
    assert alexander_polynomial(g) == want["poly"]


def test_oracle_file_has_provenance():
    assert "knot_floer_homology" in oracle()["provenance"]
    assert len(KEYS) >= 40
