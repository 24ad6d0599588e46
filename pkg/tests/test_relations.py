import pytest

from threepage.abelian import abelianize
from threepage.pages import bracket_projection
from threepage.rewrite.relations import (MoveError, apply_move, instantiate_relations,
                                         relation_registry)
from threepage.words import parse_word


def signed(s):
    return s.count("(") - s.count(")")


@pytest.mark.parametrize("n,total", [(2, 48), (3, 84), (4, 3 * (16 + 22 + 4)), (6, 3 * (16 + 44 + 16))])
def test_instance_totals(n, total):
    rels = [r for r in instantiate_relations(n) if r.counted]
    assert len(rels) == total


def test_redundant_copy_flagged():
    rels = instantiate_relations(2, include_redundant=True)
    extra = [r for r in rels if not r.counted]
    assert len(extra) == 1 and str(extra[0].lhs) == "d0 b0"


@pytest.mark.parametrize("mode", ["RSG", "NSG"])
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_relations_are_well_defined(n, mode):
    for r in instantiate_relations(n, mode, include_redundant=True):
        assert abelianize(r.lhs) == abelianize(r.rhs), r
        for p in range(3):
            assert signed(bracket_projection(r.lhs, p)) == signed(bracket_projection(r.rhs, p)), r


def test_nsg_replaces_vertex_rotations():
    rsg = {r.rid for r in instantiate_relations(3, "RSG")}
    nsg = {r.rid for r in instantiate_relations(3, "NSG")}
    assert "R9" in rsg and "R9'" not in rsg
    assert "R9'" in nsg and "R9" not in nsg
    with pytest.raises(ValueError):
        instantiate_relations(2, "XSG")


def test_apply_move():
    reg = relation_registry(2)
    rel = reg[("R3", (("i", 0), ("letter", "a")))]
    w = parse_word("a0 c0")
    v = apply_move(w, rel, 0)
    assert str(v) == "a1 d2 c0"
    assert apply_move(v, rel, 0, "rhs->lhs") == w
    with pytest.raises(MoveError):
        apply_move(w, rel, 1)
