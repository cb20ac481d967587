from setuptools import setup, find_packages

import qmock


setup(
    name='qmock',
    packages=find_packages(),
    version=qmock.__version__,
    description='qmock evaluates q-series, Appell-Lerch sums and universal mock theta functions and verifies their identities numerically',
    keywords=['scientific', 'q-series', 'mock theta functions', 'q-difference equations'],
    classifiers=[],
    setup_requires=[
        'setuptools>=18.0',
    ],
    install_requires=[
        'numpy',
        'scipy',
        'pandas',
        'pyyaml',
    ],
    entry_points={'console_scripts': ['qmock = qmock.ui.main:main']},
)
