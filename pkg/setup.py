from setuptools import find_packages, setup

setup(
    name='src',
    packages=find_packages(exclude=['tests']),
    version='0.1.0',
    install_requires=[
        'hydra-core',
        'jaxtyping',
        'joblib',
        'numpy',
        'omegaconf',
        'pandas',
        'scipy',
        'tqdm',
    ],
    description='weighted Banzhaf interaction indexes and best k-approximations of games',
    license='MIT',
    package_data={'src': ['configs/*.yaml', 'configs/hydra/*.yaml']},
    entry_points={'console_scripts': ['wbanzhaf=src.cli.main:run']},
)
