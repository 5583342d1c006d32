"""Walk through the six-point example: a P4 induced minor but no P4 subdot."""

from autsys import extract_p4, find_bidirectional_pair, hex6, path_system, subdot_reachable, verify_witness
from autsys.order import canonical_order

H = hex6()
P4 = path_system(["a", "x", "y", "b"])

print(f"HEX6: {H.n} elements, {len(H.family)} autonomous sets")
pair = find_bidirectional_pair(H)
for ctx, (lo, hi) in ((pair.A, (pair.x, pair.y)), (pair.B, (pair.y, pair.x))):
    covers = canonical_order(H, ctx).covers()
    print(f"  context {{{','.join(H.labels(ctx))}}}: {lo} < {hi}; covers {covers}")

print("P4 subdot:", "found" if subdot_reachable(H, P4) else "none (exhaustive)")
w = extract_p4(H, pair)
print("P4 induced minor witness, verified =", verify_witness(w, P4))
for line in w.narrative():
    print("  " + line)
