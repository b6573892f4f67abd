from setuptools import setup, find_packages
from maskmat import __version__


setup(
    name='maskmat',
    version=__version__,
    packages=find_packages(),
    package_data={
        'maskmat': ['data/*'],
        'maskmat.tests': ['data/*'],
    },
    author='The maskmat developers',
    description='Instantiation matrices for masked multiplication gadgets '
                'over binary fields',
    test_suite='maskmat.tests',
    classifiers=[
        'Development Status :: 4 - Beta',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'Programming Language :: Python :: 3',
        'Topic :: Security :: Cryptography',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    python_requires='>=3.8',
    install_requires=[
        'numpy>=1.17',
        'joblib>=1.0',
        'tqdm>=4.40',
    ],
    tests_require=[
        'hypothesis>=6.0',
    ],
    entry_points={
        'console_scripts': [
            'maskmat = maskmat.cli:main',
        ],
    },
)
