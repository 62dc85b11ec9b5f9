"""exheis: a numerical laboratory for the extended Heisenberg symbol calculus.

Subpackages follow the layers of the calculus: ``fock`` (truncated
Bargmann-Fock spaces), ``weyl`` (polynomial symbols, sharp products,
quantization), ``exsym`` (the extended symbol algebra and its involutions),
``index`` (numerical Fredholm index extraction and Toeplitz oracles),
``chern`` (grid manifolds and Chern-Todd integration), ``models`` (the
example zoo), and ``cli`` (batch driver).
"""

__version__ = "0.1.0"
