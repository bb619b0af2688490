# Projective bundles over CP^n: when are two of them diffeomorphic?
#
# For a = 0 (or b = 0) the manifold is P(C + γ^{a_1} + ... + γ^{a_m}) over CP^n.
# A diffeomorphism exists exactly when a truncated polynomial identity has a
# solution (eps, w); the same happens exactly when the rings are isomorphic.
from qtoric.chars import QuasitoricPair
from qtoric.classify import gb_diffeo, normal_form
from qtoric.maps import find_isomorphisms
from qtoric.ring import make_presentation

# Hirzebruch surfaces: only the parity of a_1 matters
for a1 in range(-3, 4):
    wit = gb_diffeo(1, (a1,), (a1 % 2,))
    print(f"H_{a1} ~ H_{a1 % 2}: eps={wit.epsilon} w={wit.w}")

# the ring side agrees
H1 = make_presentation(QuasitoricPair(1, 1, (1,), (0,)))
H3 = make_presentation(QuasitoricPair(1, 1, (3,), (0,)))
print("isomorphisms H*(H_1) -> H*(H_3):", [str(g) for g in find_isomorphisms(H1, H3)])

# a bigger example over CP^2
print("(0,1) ~ (1,1):", gb_diffeo(2, (0, 1), (1, 1)))
print("(1,2) ~ (0,0):", gb_diffeo(2, (1, 2), (0, 0)))
print(normal_form(QuasitoricPair(2, 2, (-1, -1), (0, 0))))
