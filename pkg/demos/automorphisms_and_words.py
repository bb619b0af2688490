# Ring automorphisms and the maps of spheres that realize them.
#
# M_{s,r} has a = (2,..,2,0,..) with s twos and b = (1,..,1,0,..) with r ones.
# Complex conjugation f acts as -I.  When 2s = m + 1 there is a map g, and
# when 2r = n + 1 a map h; short words in these realize the automorphisms.
from qtoric.classify import s_r_pair
from qtoric.maps import enumerate_automorphisms
from qtoric.realize import plan_realization, realize_automorphism
from qtoric.ring import make_presentation

for n, m, s, r in [(2, 2, 1, 1), (2, 3, 2, 1), (3, 2, 1, 2), (3, 3, 2, 2)]:
    p = s_r_pair(n, m, s, r)
    auts = enumerate_automorphisms(make_presentation(p))
    print(f"M_(s={s},r={r}) over Δ^{n} x Δ^{m}: {len(auts)} automorphisms")
    for G in auts:
        w = realize_automorphism(p, G)
        print("   ", G, "<-", "".join(w.word) or "id", "theta =", w.theta)

# the group for 2s = m+1 and 2r = n+1 has order 8, larger than the listed six
# (the product g h is the extra element together with its negative)

# realizing an isomorphism between two Hirzebruch surfaces: split it into an
# automorphism of the source followed by a fixed reference map
from qtoric.chars import QuasitoricPair
plan = plan_realization(QuasitoricPair(1, 1, (1,), (0,)), QuasitoricPair(1, 1, (3,), (0,)), [[1, 0], [1, 1]])
print("reference:", plan.reference, "automorphism:", plan.automorphism, "word:", plan.realization.word)
