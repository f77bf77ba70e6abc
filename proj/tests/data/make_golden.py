#!/usr/bin/env python3
"""Regenerates the YUV4MPEG2 golden fixtures without going through the C++ writer."""
import pathlib

HERE = pathlib.Path(__file__).resolve().parent
W, H = 6, 4


def sample(x, y, k):
    return (x * 40 + y * 7 + k * 100) % 256


def frame(k):
    return bytes(sample(x, y, k) for y in range(H) for x in range(W))


header = b"YUV4MPEG2 W6 H4 F5:1 Ip A1:1 Cmono\n"
body = b"".join(b"FRAME\n" + frame(k) for k in range(2))
(HERE / "two_frames.y4m").write_bytes(header + body)

# Same content as a 4:2:0 stream with constant chroma, truncated inside the
# third frame's luma plane.
h420 = b"YUV4MPEG2 W6 H4 F30000:1001 It A1:1 C420jpeg XYSCSS=420JPEG\n"
chroma = bytes([77]) * (2 * 3 * 2)
frames = [b"FRAME\n" + frame(k) + chroma for k in range(3)]
(HERE / "truncated_420.y4m").write_bytes(h420 + frames[0] + frames[1] + frames[2][:6 + 10])
