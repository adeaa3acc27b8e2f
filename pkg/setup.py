from setuptools import setup, find_packages

setup(
    name='FermiRMT',
    version='0.1',
    packages=find_packages(),
    install_requires=['numpy', 'scipy'],
    entry_points={
        'console_scripts': [
            'fermi_rmt = src.main:main'
        ]
    }
)
