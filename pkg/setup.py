#!/usr/bin/env python3

from setuptools import find_packages, setup

setup(
    name='hakenkit',
    version='0.0.1.dev1',
    description=(
        'A Django application for exact normal surface decisions on link'
        ' diagrams'
    ),
    long_description=open('README.rst').read(),
    long_description_content_type='text/x-rst',
    author='Hakenkit Developers',
    license='MIT',
    classifiers=[
        'Development Status :: 1 - Planning',
        'Intended Audience :: Developers',
        'Intended Audience :: Education',
        'Intended Audience :: Science/Research',
        'Topic :: Education',
        'Topic :: Scientific/Engineering',
        'Topic :: Scientific/Engineering :: Mathematics',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3 :: Only',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12',
    ],
    keywords=[
        'django',
        'genus',
        'hilbert-basis',
        'knot-theory',
        'low-dimensional-topology',
        'normal-surfaces',
        'python',
        'triangulations',
        'unknot-recognition',
    ],
    packages=find_packages(),
    install_requires=[
        'Django>=4.2.9,<5',
        'djangorestframework>=3.14.0,<4',
        'networkx>=3.2,<4',
        'sympy>=1.12,<2',
    ],
    python_requires='>=3.11',
    package_data={'hakenkit': ['py.typed']},
)
