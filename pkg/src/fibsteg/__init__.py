"""Fibonacci bit-plane steganography: embedders, steganalysis and a benchmark harness."""
from .embedders import (
    CapacityError,
    CorruptStreamError,
    EmbedJob,
    Method,
    SecretPair,
    StegoResult,
    capacity,
    embed,
    embed_pixel_mapped,
    extract,
    extract_pixel_mapped,
    map3,
)
from .keystream import KeyStream
from .metrics import QualityReport, psnr
from .pgm import load_pgm, read_pgm, save_pgm, write_pgm
from .steganalysis import (
    chi_square_cdf,
    dih_estimate,
    pov_analyze,
    rs_analyze,
)
from .zeckendorf import FibCodeword, decode, encode, is_valid

__version__ = "0.1.0"
