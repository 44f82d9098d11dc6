"""Projective Reed-Muller codes over GF(q): encoding, chart-wise syndrome
decoding with the Berlekamp-Massey-Sakata algorithm and a finite-field DFT,
a brute-force nearest-codeword oracle and codeword-error-rate analysis."""

__version__ = "0.1.0"
