#!/usr/bin/env python3
# Copyright 2026 The hdrpack Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Builds the evaluation corpus from the scikit-image sample photographs.

Each photograph is upscaled to about one megapixel, linearized, lit by a
smooth illumination field spanning many stops and given sensor-like noise.
Outputs are half-representable PFMs plus 12-bit PPMs. Deterministic.
"""

import argparse
import pathlib
import sys

import numpy as np
from PIL import Image
import skimage.data

# name, illumination stops, output kind
SOURCES = [
    ("astronaut", 14.0, "pfm"),
    ("coffee", 10.0, "pfm"),
    ("chelsea", 16.0, "pfm"),
    ("rocket", 12.0, "pfm"),
    ("immunohistochemistry", 0.0, "ppm12"),
    ("retina", 0.0, "ppm12"),
]
TARGET_PIXELS = 1_000_000


def upscale(rgb):
    h, w = rgb.shape[:2]
    s = (TARGET_PIXELS / (h * w)) ** 0.5
    size = (max(1, round(w * s)), max(1, round(h * s)))
    return np.asarray(Image.fromarray(rgb).resize(size, Image.BICUBIC), dtype=np.float64) / 255.0


def srgb_to_linear(v):
    return np.where(v <= 0.04045, v / 12.92, ((v + 0.055) / 1.055) ** 2.4)


def illumination(h, w, stops, rng):
    y, x = np.mgrid[0:h, 0:w].astype(np.float64)
    cx, cy = rng.uniform(0.2, 0.8) * w, rng.uniform(0.2, 0.8) * h
    r = np.hypot(x - cx, y - cy) / np.hypot(w, h)
    # A bright source falling off radially plus a diagonal gradient.
    field = 1.0 - 2.0 * r + 0.3 * ((x / w) - (y / h))
    field = (field - field.min()) / (field.max() - field.min())
    return np.exp2(stops * (field - 0.5))


def make_hdr(rgb, stops, rng):
    lin = srgb_to_linear(rgb)
    h, w = lin.shape[:2]
    hdr = lin * illumination(h, w, stops, rng)[:, :, None]
    hdr *= 1.0 + 0.01 * rng.standard_normal(hdr.shape)
    hdr += 1e-4 * np.abs(rng.standard_normal(hdr.shape))
    hdr = np.clip(hdr, 0.0, 60000.0)
    # Round through half so the PFM holds exactly representable values.
    return hdr.astype(np.float16).astype(np.float32)


def write_pfm(path, img):
    h, w = img.shape[:2]
    with open(path, "wb") as f:
        f.write(b"PF\n%d %d\n-1.0\n" % (w, h))
        f.write(np.ascontiguousarray(img[::-1], dtype="<f4").tobytes())


def write_ppm12(path, rgb, rng):
    v = srgb_to_linear(rgb) ** (1 / 2.2) * 4095.0
    v += 2.0 * rng.standard_normal(v.shape)
    v = np.clip(np.rint(v), 0, 4095).astype(">u2")
    h, w = v.shape[:2]
    with open(path, "wb") as f:
        f.write(b"P6\n%d %d\n4095\n" % (w, h))
        f.write(v.tobytes())


def main(argv):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", required=True, type=pathlib.Path)
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    for i, (name, stops, kind) in enumerate(SOURCES):
        rng = np.random.default_rng(1000 + i)
        rgb = getattr(skimage.data, name)()
        if rgb.ndim == 2:
            rgb = np.stack([rgb] * 3, axis=-1)
        rgb = upscale(rgb[:, :, :3].astype(np.uint8))
        if kind == "pfm":
            path = args.out / f"{name}.pfm"
            write_pfm(path, make_hdr(rgb, stops, rng))
        else:
            path = args.out / f"{name}_12bit.ppm"
            write_ppm12(path, rgb, rng)
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
