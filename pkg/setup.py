#!/usr/bin/env python

import os

from setuptools import setup, find_packages

ROOT = os.path.realpath(os.path.join(os.path.dirname(__file__)))

from ptaseg.version import __version__    # noqa

with open(os.path.join(ROOT, 'requirements.txt')) as requirements:
    required = [
        line for line in requirements.read().splitlines()
        if line and not line.startswith('#')
    ]


kwargs = {
    'name': 'ptaseg',
    'version': str(__version__),  # noqa
    'packages': find_packages(exclude=['tests*']),
    'include_package_data': True,
    'description': (
        'Piecewise t-test augmented segmentation loss, segmentation metrics '
        'and boundary-offset experiments.'
    ),
    'license': 'Apache',
    'install_requires': required,
    'python_requires': '>=3.8',
    'tests_require': ['pytest', 'pytest-django'],
    'entry_points': """
        [console_scripts]
        ptaseg=ptaseg.util:main
    """,
    'classifiers': [
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Image Processing',
        'Topic :: Scientific/Engineering :: Medical Science Apps.',
    ]
}

setup(**kwargs)
