import hashlib

import pytest

from aris import ParamSet, Ristretto255, ToyGroup, builtin_params, keygen


def ref_hash(tag, key, data, outlen):
    """Independent restatement of the normative hash layout."""
    return hashlib.blake2b(bytes([tag]) + data, key=key, digest_size=outlen).digest()


def ref_scalar(tag, z, i, order):
    return int.from_bytes(ref_hash(tag, z, i.to_bytes(4, "big"), 64), "little") % order


@pytest.fixture
def toy():
    return ToyGroup(101)


@pytest.fixture
def toy_small(toy):
    return ParamSet(t=4, k=2, l1=4, l2=256, group=toy, name="toy-small")


@pytest.fixture(params=["commodity", "embedded"])
def toy_builtin(request):
    return builtin_params(request.param, ToyGroup(101))


@pytest.fixture(scope="session")
def ec_keys():
    """One ristretto255 key pair per built-in parameter set (keygen is slow)."""
    out = {}
    for name in ("commodity", "embedded"):
        params = builtin_params(name, Ristretto255())
        out[name] = keygen(params, bytes(range(16)))
    return out


# -- acceptance reporting -------------------------------------------------------

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n, title): exit criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    n, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        prev = _ACCEPTANCE.get(n, (title, True))
        _ACCEPTANCE[n] = (title, prev[1] and rep.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        title, ok = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")
