"""Dictionary constructions and their structural constants.

A dictionary is a d x K matrix of unit-norm columns (atoms).  Two
constructions are provided: the union of the Dirac and orthonormal DCT-II
bases, and that union extended by random unit vectors drawn uniformly
from the sphere.
"""

import numpy as np
from dataclasses import dataclass

from .linops import as_matrix, gram, sym_op_norm

DIRAC_DCT = "dirac-dct"
DIRAC_DCT_RANDOM = "dirac-dct-random"
CUSTOM = "custom"

UNIT_NORM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Dictionary:
    """d x K matrix of unit-norm atoms plus construction metadata."""

    matrix: np.ndarray
    kind: str = CUSTOM

    def __post_init__(self):
        m = as_matrix(self.matrix).copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        d, k = m.shape
        if k < d:
            raise ValueError(f"need at least as many atoms as dimensions, got K={k} < d={d}")
        norms = np.linalg.norm(m, axis=0)
        worst = np.abs(norms - 1.0).max()
        if worst > UNIT_NORM_TOL:
            raise ValueError(f"atoms must have unit norm (worst deviation {worst:.3e})")

    @property
    def d(self):
        return self.matrix.shape[0]

    @property
    def K(self):
        return self.matrix.shape[1]

    def atom(self, j):
        return self.matrix[:, int(j)]


def _dct_block(d):
    n = np.arange(d)[:, None]
    j = np.arange(d)[None, :]
    block = np.sqrt(2.0 / d) * np.cos(np.pi * (2 * n + 1) * j / (2 * d))
    block[:, 0] = 1.0 / np.sqrt(d)
    return block


def build_dirac_dct(d):
    """Union of the standard basis and the orthonormal DCT-II basis (K = 2d).

    Columns 0..d-1 are Dirac atoms e_n; column d+j holds the DCT atom with
    entries 1/sqrt(d) for j = 0 and sqrt(2/d) * cos(pi*(2n+1)*j/(2d))
    otherwise.
    """
    d = int(d)
    if d < 2 or d % 2 != 0:
        raise ValueError(f"dimension must be an even integer >= 2, got {d}")
    matrix = np.hstack([np.eye(d), _dct_block(d)])
    return Dictionary(matrix=matrix, kind=DIRAC_DCT)


def build_dirac_dct_random(d, seed):
    """Dirac-DCT extended by 2d unit vectors uniform on the sphere (K = 4d).

    The random atoms are normalised standard Gaussian vectors, drawn
    deterministically from ``seed``.
    """
    base = build_dirac_dct(d)
    rng = np.random.default_rng(seed)
    extra = rng.standard_normal((d, 2 * d))
    extra /= np.linalg.norm(extra, axis=0)
    matrix = np.hstack([base.matrix, extra])
    return Dictionary(matrix=matrix, kind=DIRAC_DCT_RANDOM)


def coherence(dictionary):
    """Maximum absolute inner product between distinct atoms.

    Exact exhaustive scan of the Gram matrix; fine for K up to a few
    thousand atoms.
    """
    m = dictionary.matrix
    if m.shape[1] < 2:
        raise ValueError("coherence needs at least two atoms")
    g = np.abs(m.T @ m)
    np.fill_diagonal(g, 0.0)
    return float(g.max())


def dirac_dct_coherence(d):
    """Closed-form coherence of build_dirac_dct(d): sqrt(2/d)*cos(pi/(2d)).

    The extreme pair is the first Dirac atom against the lowest-frequency
    cosine atom; the widely quoted sqrt(2/d) is the limit of this value.
    """
    return float(np.sqrt(2.0 / d) * np.cos(np.pi / (2 * d)))


def delta(dictionary, indices):
    """Spectral deviation of a selected Gram matrix from the identity.

    delta = || Phi_I^T Phi_I - I ||_2, the conditioning measure of the
    atom subset ``indices``.
    """
    g = gram(dictionary.matrix, indices)
    return sym_op_norm(g - np.eye(g.shape[0]))


def write_dictionary_csv(dictionary, path):
    """Serialise as CSV: header ``d,K,kind``, then one row per dimension.

    Entries use repr-exact float formatting so a round trip is bitwise
    faithful.
    """
    m = dictionary.matrix
    lines = ["d,K,kind", f"{dictionary.d},{dictionary.K},{dictionary.kind}"]
    for row in m:
        lines.append(",".join(f"{x:.17g}" for x in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_dictionary_csv(path):
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if len(lines) < 2 or lines[0] != "d,K,kind":
        raise ValueError(f"{path}: not a dictionary CSV (bad header)")
    d_str, k_str, kind = lines[1].split(",")
    d, k = int(d_str), int(k_str)
    rows = [[float(x) for x in ln.split(",")] for ln in lines[2:]]
    matrix = np.array(rows)
    if matrix.shape != (d, k):
        raise ValueError(f"{path}: expected {d}x{k} matrix, got {matrix.shape}")
    return Dictionary(matrix=matrix, kind=kind)
