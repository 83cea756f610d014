"""Run the three detectors on clean, LSB and mapped images.

RS compares regular/singular groups under +1/-1 flipping, the pairs-of-values
attack watches histogram pairs (2k, 2k+1) even out, and the difference-histogram
estimator guesses the fraction of LSBs replaced.
"""
import numpy as np

from fibsteg import EmbedJob, Method, dih_estimate, embed, pov_analyze, rs_analyze
from fibsteg.datasets import standard_covers

covers = standard_covers()
cases = [("clean", None, 0), ("lsb-seq 1.0", Method.LSB_SEQUENTIAL, 1.0),
         ("lsb-random 0.5", Method.LSB_RANDOM, 0.5), ("mapped 2.0", Method.PROPOSED_MAPPED, 2.0)]

for name, cover in covers.items():
    print(f"== {name}")
    for label, method, rate in cases:
        img = cover if method is None else embed(cover, EmbedJob(method, seed=3, rate=rate)).stego
        rs = rs_analyze(img)
        pov = pov_analyze(img)
        print(f"  {label:>14}: RM {rs.rm:5.1f} RM- {rs.rm_neg:5.1f}  SM {rs.sm:5.1f} SM- {rs.sm_neg:5.1f}"
              f"  | POV median p {np.median(pov.p_values):.3f}"
              f"  | DIH {dih_estimate(img).ratio:+.3f}")

# The POV curve of a half-embedded image: high p while the scan stays inside the
# embedded prefix, collapsing once it reaches untouched pixels.
img = embed(covers["astronaut"], EmbedJob(Method.LSB_SEQUENTIAL, seed=3, rate=0.5)).stego
curve = pov_analyze(img, step=0.1)
print("\nlsb-seq 0.5 on astronaut, POV by scan fraction:")
print("  " + "  ".join(f"{t:.1f}:{p:.2f}" for t, p in curve.points))
