"""Writes the n=8 Phillips/Baart/Foxgood fixtures used by the generator tests.

This is a direct numpy transcription of the MATLAB routines phillips.m,
baart.m and foxgood.m from P. C. Hansen's Regularization Tools. It is kept
separate from the C++ port on purpose: the C++ generators are checked
against these files, not against themselves.

Usage: python3 generate_regtools_fixtures.py [outdir]
"""
import sys
from pathlib import Path

import numpy as np


def phillips(n):
    if n % 4 != 0:
        raise ValueError("n must be a multiple of 4")
    h = 12.0 / n
    n4 = n // 4
    r1 = np.zeros(n)
    c = np.cos(np.arange(-1, n4 + 1) * 4 * np.pi / n)
    r1[:n4] = h + 9 / (h * np.pi**2) * (2 * c[1:n4 + 1] - c[0:n4] - c[2:n4 + 2])
    r1[n4] = h / 2 + 9 / (h * np.pi**2) * (np.cos(4 * np.pi / n) - 1)
    A = np.array([[r1[abs(i - j)] for j in range(n)] for i in range(n)])
    b = np.zeros(n)
    c = np.pi / 3
    for i in range(n // 2 + 1, n + 1):
        t1 = -6 + i * h
        t2 = t1 - h
        b[i - 1] = (t1 * (6 - abs(t1) / 2)
                    + ((3 - abs(t1) / 2) * np.sin(c * t1) - 2 / c * (np.cos(c * t1) - 1)) / c
                    - t2 * (6 - abs(t2) / 2)
                    - ((3 - abs(t2) / 2) * np.sin(c * t2) - 2 / c * (np.cos(c * t2) - 1)) / c)
        b[n - i] = b[i - 1]
    b = b / np.sqrt(h)
    x = np.zeros(n)
    grid = np.arange(n4 + 1) * h
    x[2 * n4:3 * n4] = (h + np.diff(np.sin(grid * c)) / c) / np.sqrt(h)
    x[n4:2 * n4] = x[3 * n4 - 1:2 * n4 - 1:-1]
    return A, b, x


def baart(n):
    if n % 2 != 0:
        raise ValueError("n must be even")
    hs = np.pi / (2 * n)
    ht = np.pi / n
    c = 1 / (3 * np.sqrt(2))
    A = np.zeros((n, n))
    ihs = np.arange(n + 1) * hs
    nh = n // 2
    f3 = np.exp(ihs[1:]) - np.exp(ihs[:-1])
    for j in range(1, n + 1):
        f1 = f3
        co2 = np.cos((j - 0.5) * ht)
        co3 = np.cos(j * ht)
        f2 = (np.exp(ihs[1:] * co2) - np.exp(ihs[:-1] * co2)) / co2
        if j == nh:
            f3 = hs * np.ones(n)
        else:
            f3 = (np.exp(ihs[1:] * co3) - np.exp(ihs[:-1] * co3)) / co3
        A[:, j - 1] = c * (f1 + 4 * f2 + f3)
    si = np.arange(1, 2 * n + 1) * 0.5 * hs
    si = np.sinh(si) / si
    b = np.zeros(n)
    b[0] = 1 + 4 * si[0] + si[1]
    k = np.arange(1, n)
    b[1:] = si[2 * k - 1] + 4 * si[2 * k] + si[2 * k + 1]
    b = b * np.sqrt(hs) / 3
    x = -np.diff(np.cos(np.arange(n + 1) * ht)) / np.sqrt(ht)
    return A, b, x


def foxgood(n):
    h = 1.0 / n
    t = h * (np.arange(1, n + 1) - 0.5)
    A = h * np.sqrt(np.add.outer(t**2, t**2))
    b = ((1 + t**2) ** 1.5 - t**3) / 3
    return A, b, t


def write_instance(path, name, n, A, b):
    with open(path, "w", encoding="utf-8") as out:
        out.write(f"name = {name}\n")
        out.write(f"n = {n}\n")
        out.write("\n")
        out.write(f"{A.shape[0]} {A.shape[1]}\n")
        for row in A:
            out.write(" ".join(repr(float(v)) for v in row) + "\n")
        out.write("\n")
        out.write(f"1 {b.size}\n")
        out.write(" ".join(repr(float(v)) for v in b) + "\n")


def main():
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent
    for name, gen in (("phillips", phillips), ("baart", baart), ("foxgood", foxgood)):
        A, b, x = gen(8)
        write_instance(outdir / f"{name}_8.txt", name, 8, A, b)
        for n in (8, 32, 64):
            A, b, x = gen(n)
            rel = np.linalg.norm(A @ x - b) / np.linalg.norm(b)
            print(f"{name:9s} n={n:3d} |Ax-b|/|b| = {rel:.3e}  cond = {np.linalg.cond(A):.3e}")


if __name__ == "__main__":
    main()
