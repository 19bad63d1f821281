from numpy.random import PCG64, Generator, SeedSequence

from src.bimould import ExactBackend


def sample_words(backend, r, n=6, seed=0):
    return [backend.sample_word(r, Generator(PCG64(SeedSequence([seed, r, k])))) for k in range(n)]


def assert_same(A, B, lengths=None, points=6):
    """Componentwise equality: generic word on exact backends, random points otherwise."""
    backend = A.backend
    lengths = range(0, backend.max_length + 1) if lengths is None else lengths
    for r in lengths:
        if isinstance(backend, ExactBackend):
            assert A.component(r) == B.component(r), f"length {r}"
        else:
            for w in sample_words(backend, r, points):
                assert A(w) == B(w), f"length {r}"
