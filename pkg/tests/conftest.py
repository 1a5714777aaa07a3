import pytest
import py.path


TEST_CONFIGS_PATH = py.path.local(__file__).realpath() / '..' / 'test_configs'
FIXTURES_PATH = py.path.local(__file__).realpath() / '..' / 'fixtures'


def find_all_test_configs():
    for config in TEST_CONFIGS_PATH.listdir(sort=True):
        config = config.basename
        if config.endswith('.yml'):
            yield config.replace('.yml', '')


TEST_CONFIGS = sorted(find_all_test_configs())


def pytest_addoption(parser):
    parser.addoption(
        "--acceptance",
        action="store_true",
        default=False,
        help="also run the 10^6 trial acceptance checks",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("acceptance"):
        return
    skip = pytest.mark.skip(reason="needs --acceptance")
    for item in items:
        if "acceptance" in item.keywords:
            item.add_marker(skip)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: 10^6 trial checks, run with --acceptance")


@pytest.fixture
def station_names_file():
    return str(FIXTURES_PATH / 'stations.txt')


@pytest.fixture(autouse=True)
def _reset_pointersim_log_handlers():
    # Handlers bound to a capsys stream outlive the test that closed it.
    yield
    import logging
    logger = logging.getLogger('pointersim')
    for handler in list(logger.handlers):
        if getattr(handler, '_pointersim', False):
            logger.removeHandler(handler)
