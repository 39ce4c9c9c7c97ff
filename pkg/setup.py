from setuptools import find_packages, setup

setup(
    name='src',
    packages=find_packages(),
    version='0.1.0',
    description='Quasitrivial n-ary operations on finite chains: constructors, '
                'property checkers and exhaustive verification suites.',
    author='Your name (or your organization/company/team)',
    license='MIT',
    entry_points={'console_scripts': ['qsn=src.cli:cli']},
)
