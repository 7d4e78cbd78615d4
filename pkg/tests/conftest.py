from ptaseg.version import __version__


def pytest_report_header(config):
    """Customize the report header to display the package version."""
    return 'Using ptaseg version: %s' % __version__
