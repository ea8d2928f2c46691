import numpy as np
import pytest

from spinwitness.qmat import dicke_basis, ket_to_dm, kron

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _ACCEPTANCE.append((marker.args[0], marker.args[1], rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    merged = {}
    for number, title, outcome in _ACCEPTANCE:
        ok = merged.get(number, (title, True))[1] and outcome == "passed"
        merged[number] = (title, ok)
    for number in sorted(merged):
        title, ok = merged[number]
        terminalreporter.write_line(f"AC{number:<3d}{'PASS' if ok else 'FAIL'}  {title}")


def random_symmetric_state(n, rng, rank=None, product_weight=0.0):
    """rho = B s B^dag with s a random low-rank state on the Dicke basis B.

    ``product_weight`` mixes in a random symmetric product state |a>^{(x)n}.
    """
    b = dicke_basis(n)
    rank = rank or int(rng.integers(1, 4))
    g = rng.normal(size=(n + 1, rank)) + 1j * rng.normal(size=(n + 1, rank))
    s = g @ g.conj().T
    rho = b @ (s / np.trace(s)) @ b.conj().T
    if product_weight:
        a = rng.normal(size=2) + 1j * rng.normal(size=2)
        a /= np.linalg.norm(a)
        rho = (1 - product_weight) * rho + product_weight * ket_to_dm(kron(*([a] * n)))
    return rho


def random_state(n, rng, rank=3):
    g = rng.normal(size=(2**n, rank)) + 1j * rng.normal(size=(2**n, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


def random_sl2(rng):
    m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    return m / np.sqrt(np.linalg.det(m))


def random_su2(rng):
    q, r = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    return q / np.sqrt(np.linalg.det(q))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
