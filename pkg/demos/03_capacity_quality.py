"""Payload size against distortion for each method on the standard covers."""
import numpy as np

from fibsteg import EmbedJob, Method, capacity, embed, psnr
from fibsteg.bench import default_rates
from fibsteg.datasets import standard_covers

covers = standard_covers()
print("capacity (bits):")
for name, img in covers.items():
    print(f"  {name:>9}: " + ", ".join(f"{m.value}={capacity(m, img)}" for m in Method))

print("\nmean PSNR (dB) by rate:")
print(f"  {'rate':>5} " + " ".join(f"{m.value:>11}" for m in Method))
for rate in default_rates(Method.PROPOSED_MAPPED):
    row = []
    for m in Method:
        if rate > m.max_rate:
            row.append(f"{'-':>11}")
            continue
        vals = [psnr(c, embed(c, EmbedJob(m, seed=1, rate=rate)).stego).psnr_db for c in covers.values()]
        row.append(f"{np.mean(vals):>11.2f}")
    print(f"  {rate:>5g} " + " ".join(row))

# Fibonacci skipping embeds fewer bits than asked for once candidates run out.
res = embed(covers["camera"], EmbedJob(Method.FIB_RANDOM, seed=1, rate=1.0))
print(f"\nfib-random at rate 1 on camera: {res.bits_embedded} of 262144 bits, {res.pixels_skipped} pixels skipped")
