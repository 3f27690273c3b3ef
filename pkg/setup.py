#!/usr/bin/env python

"""The setup script."""

from setuptools import setup, find_packages

with open('README.rst') as readme_file:
    readme = readme_file.read()

with open('HISTORY.rst') as history_file:
    history = history_file.read()

requirements = [
    'click>=8.1',
    'numpy>=1.24',
    'pandas>=1.5',
    'sympy>=1.11',
    'tqdm>=4.65',
]

test_requirements = ['pytest>=6', 'jsonschema>=4.17', ]

setup(
    author="Ênio Rodrigues",
    author_email='eniocc@gmail.com',
    python_requires='>=3.9',
    classifiers=[
        'Development Status :: 2 - Pre-Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.9',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    description="Exact Lubin-Tate formal group, (phi, Gamma)-module and epsilon-constant calculus with a "
                "verification runner",
    entry_points={
        'console_scripts': [
            'ltlab=ltlab.core.Cli:main',
        ],
    },
    install_requires=requirements,
    license="MIT license",
    long_description=readme + '\n\n' + history,
    include_package_data=True,
    package_data={'ltlab': ['error_messages/*.json', 'schema/*.json', 'sample/*.ini']},
    keywords='ltlab',
    name='ltlab',
    packages=find_packages(include=['ltlab', 'ltlab.*']),
    test_suite='tests',
    tests_require=test_requirements,
    url='https://github.com/eniocc/ltlab',
    version='0.1.0',
    zip_safe=False,
)
