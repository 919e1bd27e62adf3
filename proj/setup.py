import os
import subprocess
from glob import glob

from pybind11.setup_helpers import ParallelCompile, Pybind11Extension, build_ext
from setuptools import setup

ParallelCompile("SKINBABBLE_BUILD_JOBS", default=4).install()


def eigen_include() -> str:
    try:
        out = subprocess.run(
            ["pkg-config", "--cflags-only-I", "eigen3"],
            capture_output=True, text=True, check=True,
        ).stdout
        for token in out.split():
            if token.startswith("-I"):
                return token[2:]
    except (OSError, subprocess.CalledProcessError):
        pass
    return os.environ.get("EIGEN3_INCLUDE_DIR", "/usr/include/eigen3")


ext = Pybind11Extension(
    "skinbabble._core",
    sources=sorted(glob("src/*.cpp")) + ["python/bindings.cpp"],
    include_dirs=["include", "vendor", eigen_include()],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
