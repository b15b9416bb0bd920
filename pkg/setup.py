import platform

from setuptools import Extension, setup

extra = ["-O3", "-funroll-loops"]
if platform.machine() in ("x86_64", "AMD64"):
    extra.append("-mavx2")

setup(
    ext_modules=[
        Extension(
            "hadcensus._bitgram",
            sources=["src/hadcensus/_bitgram.c"],
            extra_compile_args=extra,
            optional=True,  # pure-numpy fallback exists
        )
    ]
)
