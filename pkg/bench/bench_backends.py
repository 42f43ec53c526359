#!/usr/bin/env python3
"""Run the backend benchmark (same as `agdec bench`)."""

from agdec.benchmarks import run_benchmark

if __name__ == "__main__":
    run_benchmark()
