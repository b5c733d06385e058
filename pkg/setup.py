#!/usr/bin/env python
# -*- coding: utf-8 -*-

'''The setup script.'''

from setuptools import setup, find_packages

requirements = [
    'numpy>=1.22',
]

def readme():
    with open('README.rst') as f:
        return f.read()

setup(
    name='anglekit',
    version='0.1.0',
    description='For studying angle vectors of polytopes and zonotopes',
    long_description=readme(),
    author='Mark Bell',
    author_email='mcbell@illinois.edu',
    packages=find_packages(exclude=['tests']),
    include_package_data=True,
    install_requires=requirements,
    entry_points={
        'console_scripts': [
            'anglekit = anglekit.cli:main',
        ],
    },
    license='MIT License',
    zip_safe=False,
    keywords='polytope zonotope cone angle flag Whitney ab-index',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Education',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Topic :: Scientific/Engineering :: Mathematics',
        ],
)
