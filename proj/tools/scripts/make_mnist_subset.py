#!/usr/bin/env python3
"""Build the bundled MNIST subset from the npm `mnist` package (MIT).

Usage: npm pack mnist && tar xzf mnist-*.tgz
       make_mnist_subset.py package/src/digits data/mnist6600 --per-class 660

Writes an IDX3 image file (uint8, 28x28) and a one-label-per-line text file.
Pixel values in the package are floats in [0,1] rounded to 3 decimals; they
are mapped back to bytes with round(v * 255).
"""
import argparse
import json
import pathlib
import struct


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("digits_dir")
    ap.add_argument("out_dir")
    ap.add_argument("--per-class", type=int, default=660)
    args = ap.parse_args()

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    pixels = bytearray()
    labels = []
    for digit in range(10):
        data = json.load(open(pathlib.Path(args.digits_dir) / f"{digit}.json"))["data"]
        count = len(data) // 784
        if count < args.per_class:
            raise SystemExit(f"digit {digit}: only {count} samples")
        for s in range(args.per_class):
            row = data[s * 784:(s + 1) * 784]
            pixels.extend(min(255, max(0, round(v * 255))) for v in row)
            labels.append(digit)

    n = len(labels)
    with open(out / "images.idx3-ubyte", "wb") as f:
        f.write(struct.pack(">IIII", 0x00000803, n, 28, 28))
        f.write(pixels)
    with open(out / "labels.txt", "w") as f:
        f.write("".join(f"{y}\n" for y in labels))


if __name__ == "__main__":
    main()
