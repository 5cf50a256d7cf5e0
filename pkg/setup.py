from setuptools import setup, find_packages

setup(
    name="nestexp",
    version="1.0.0",
    packages=find_packages(exclude=["tests", "examples*"]),
    py_modules=["main", "dispatcher", "logging_config", "system_tests"],
    include_package_data=True,
    install_requires=[
        "numpy==1.26.4",
        "scipy==1.12.0",
        "mpmath==1.3.0",
        "pydantic==2.6.3",
        "pydantic-settings==2.2.1",
        "psutil==5.9.8",
    ],
    entry_points={"console_scripts": ["nestexp=main:main"]},
    python_requires=">=3.10",
)
