#!/usr/bin/env python
# -*- coding: utf-8 -*-

import os

from setuptools import find_packages, setup


def get_install_requirements(path):
    content = open(os.path.join(os.path.dirname(__file__), path)).read()
    return [req for req in content.split("\n") if req != "" and not req.startswith("#")]


def setup_package():
    setup(
        name="flocknav",
        author="flocknav developers",
        description="Semantic-map configured multi-robot MPC and closed-loop scenario harness",
        install_requires=get_install_requirements("requirements.in"),
        tests_require=get_install_requirements("test-requirements.in"),
        packages=find_packages(exclude=["tests", "tests.*"]),
        package_data={"flocknav": ["data/*.json", "data/scenarios/*.json"]},
        entry_points={"console_scripts": ["flocknav = flocknav.cli:main"]},
        python_requires=">=3.7",
        classifiers=[
            "Development Status :: 4 - Beta",
            "Programming Language :: Python",
            "Programming Language :: Python :: 3",
            "Topic :: Scientific/Engineering",
        ],
        version="0.1.0",
    )


if __name__ == "__main__":
    setup_package()
