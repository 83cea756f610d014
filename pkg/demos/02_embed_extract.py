"""Hide a text in a cover with each method and read it back.

The mapped method stores two message bits per pixel in the three lowest
Fibonacci planes, so it carries twice the payload of the LSB methods.
"""
import sys
import tempfile
from pathlib import Path

from fibsteg import EmbedJob, Method, embed, extract, load_pgm, save_pgm
from fibsteg.datasets import standard_covers
from fibsteg.embedders import bits_to_bytes, bytes_to_bits

cover = standard_covers()["camera"]
secret = (b"Pixels whisper in Fibonacci. " * 200)[: int(sys.argv[1]) if len(sys.argv) > 1 else 4000]
key = 0xC0FFEE

tmp = Path(tempfile.mkdtemp())
for method in Method:
    res = embed(cover, EmbedJob(method, seed=key, message=bytes_to_bits(secret)))
    path = tmp / f"{method.value}.pgm"
    save_pgm(path, res.stego)  # stegos survive a trip through PGM

    back = bits_to_bytes(extract(load_pgm(path), method, seed=key))
    print(f"{method.value:>10}: {res.bits_embedded:>6} bits, visited {res.pixels_visited:>6} px, "
          f"skipped {res.pixels_skipped:>5}, fallback {res.pixels_fallback}, "
          f"max |delta| {res.max_abs_delta}, recovered={back == secret}")

# A wrong key on a keyed method gives garbage (usually a corrupt length header).
stego = embed(cover, EmbedJob(Method.LSB_RANDOM, seed=key, message=bytes_to_bits(b"hello"))).stego
try:
    print("wrong key reads:", bits_to_bytes(extract(stego, Method.LSB_RANDOM, seed=key + 1))[:16])
except ValueError as exc:
    print("wrong key:", exc)
