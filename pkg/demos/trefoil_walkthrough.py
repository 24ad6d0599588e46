"""From a three-page word to invariants of the knot it encodes.

    python3 demos/trefoil_walkthrough.py
"""

from threepage.abelian import abelianize, center_image_member, format_vector
from threepage.fundgroup import count_homs, homology, neuwirth_presentation, tietze_simplify
from threepage.pages import abstract_graph, arc_matching, bracket_projection, is_balanced
from threepage.words import mirror, parse_word, shift_index

w = parse_word("a2 d0 d2 a1 a1 b2 b0 c1 c1 c2")
print("word      ", w)
for i in range(3):
    print("page %d    " % i, bracket_projection(w, i))
print("balanced  ", bool(is_balanced(w)))

m = arc_matching(w)
g = abstract_graph(m)
print("arcs      ", m.arch_number, " components", g.components, " betti", g.betti)

v = abelianize(w)
print("abelian   ", format_vector(v), " central image:", center_image_member(v))

pres = neuwirth_presentation(m)
print("pi_1      ", len(pres.generators), "generators,", len(pres.relators), "relators")
small = tietze_simplify(pres)
print("simplified", small)
print("H_1       ", homology(small))
print("homs      ", {N: count_homs(small, N) for N in (3, 4, 5)})

# the same knot seen from the other side, and rotated about the axis
print("mirror    ", mirror(w))
print("shifted   ", shift_index(w, 1))
