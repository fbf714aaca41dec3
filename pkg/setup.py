#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Edgeworth corrections for weighted sums of random vectors."""

from setuptools import setup, find_packages

version = "0.1.0"

setup(
    name='edgekit',
    version=version,
    description="Multivariate Edgeworth corrections for weighted sums, with exact and Monte Carlo rate checks",
    license='LICENSE',
    keywords="Edgeworth expansion central limit theorem cumulants Hermite casadi",
    packages=find_packages(exclude=['tests', 'examples', 'cookbook']),
    include_package_data=True,
    long_description=open('README.md').read(),
    long_description_content_type='text/markdown',
    install_requires=[
        'casadi>=3.5,<4.0',
        'numpy',
        'scipy'
    ],
    extras_require={
        'test': ['pytest', 'hypothesis'],
    },
    entry_points={
        'console_scripts': ['edgekit=edgekit.cli:main'],
    },
    classifiers=[
        'Development Status :: 3 - Alpha',
        'License :: OSI Approved :: GNU Lesser General Public License v3 (LGPLv3)',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics'
    ],
)
