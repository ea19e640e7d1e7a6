"""Encode a 16-bit message, delete one bit, and watch the decoder guess.

Run with ``python demos/worked_example.py``.
"""
import numpy as np

from guesscheck.bits import as_bits, bits_to_int, to_str
from guesscheck.gc import (CaseHypothesis, GcParams, case_criteria, decode_case,
                           enumerate_cases, gc_decode, gc_decode_with_parities, gc_encode,
                           message_symbols, precoded_bits)

p = GcParams(k=16, delta=1, c=2, ell=4)  # GF(16), two parities
f = p.field
u = "1110000011010001"

print("message symbols:", [f.power_repr(s) for s in message_symbols(u, p)])
x = precoded_bits(u, p)
print("before repetition:", to_str(x))
print("full codeword:    ", to_str(gc_encode(u, p)))

# delete the 14th bit; parities arrive intact
y = np.delete(x, 13)
y_sys, tail = y[:15], y[15:]
par = [bits_to_int(tail[:4]), bits_to_int(tail[4:])]

for per_block in enumerate_cases(p.K, 1):
    hyp = CaseHypothesis(1, 0, per_block)
    cand = decode_case(y_sys, hyp, par, p)
    c1, c2 = case_criteria(cand, hyp, y_sys, par, p)
    print(f"case {per_block.index(1) + 1}: {[f.power_repr(s) for s in cand.symbols]}"
          f"  parity ok={c1}  supersequence ok={c2}")

out = gc_decode_with_parities(y_sys, par, p)
print("verdict:", out.status, to_str(out.message))

# a message where two cases survive
u2 = "1101000010000101"
y2 = np.delete(precoded_bits(u2, p), 13)
par2 = [bits_to_int(y2[15:19]), bits_to_int(y2[19:])]
out2 = gc_decode_with_parities(y2[:15], par2, p)
print("second message:", out2.status,
      [[f.power_repr(s) for s in c] for c in out2.candidates])

# with the repetition-coded tail the deletion may hit the parity bits too
for pos in (3, 20, 31):
    r = gc_decode(np.delete(gc_encode(u, p), pos - 1), p)
    print(f"full codeword, bit {pos} deleted:", r.status, r.message is not None and to_str(r.message))
