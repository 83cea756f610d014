"""Fibonacci bit-planes of an 8-bit pixel.

A pixel value is written as a sum of non-consecutive Fibonacci numbers
(1, 2, 3, 5, 8, ...). Twelve such planes are enough for 0..255, and no two
neighbouring planes are ever both set.
"""
from fibsteg import decode, encode, is_valid
from fibsteg.zeckendorf import FIB_WEIGHTS, FibCodeword

print("weights:", " ".join(f"{w:>3}" for w in FIB_WEIGHTS))
for v in (0, 1, 4, 20, 100, 253, 255):
    code = encode(v)
    print(f"{v:>7}: " + "   ".join(str(code)) + f"   planes {sorted(code.positions())}")

# The two lowest binary planes of 255 are both 1; its Fibonacci form has
# only three planes set.
print("\n255 in binary:", format(255, "08b"), " in Fibonacci:", encode(255))

# Adjacent ones are not canonical: 2 + 3 = 5 has the valid form 0001.
odd = FibCodeword.from_positions({2, 3})
print(f"\n{odd} decodes to {decode(odd)}, valid={is_valid(odd)}; canonical form {encode(decode(odd))}")

# How often each low pattern (b3 b2 b1) occurs across 0..255
counts = {}
for v in range(256):
    c = encode(v)
    key = f"{c.bit(3)}{c.bit(2)}{c.bit(1)}"
    counts[key] = counts.get(key, 0) + 1
print("\nlow 3-plane patterns over 0..255:", dict(sorted(counts.items())))
