"""Audio ingest: WAV decoding, canonicalization, silence trimming, segmentation, loudness.

Everything downstream consumes one canonical representation: mono float
samples in [-1, 1] at 16 kHz. All functions here are pure and thread-safe.
"""

from __future__ import annotations

import io
import math
import struct
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path

import numpy as np
from scipy.signal import resample_poly

from .errors import CorruptFile, EmptyClip, UnsupportedFormat

CANONICAL_RATE = 16000
SEGMENT_SAMPLES = CANONICAL_RATE  # one second

# Silence trimming operates on 100 ms RMS frames; a frame below the floor
# counts as silent, and silent runs longer than 1 s are removed.
SILENCE_FRAME_SAMPLES = CANONICAL_RATE // 10
SILENCE_FLOOR_DB = -60.0
MAX_SILENCE_RUN_S = 1.0

LOUDNESS_FLOOR_DB = -120.0  # clamp for all-zero input


@dataclass
class AudioClip:
    """Mono PCM at the canonical rate. `samples` is a float64 1-D array."""

    samples: np.ndarray
    sample_rate: int = CANONICAL_RATE
    source_id: str = ""

    @property
    def duration_s(self) -> float:
        return len(self.samples) / self.sample_rate


@dataclass
class Segment:
    """Exactly one second of canonical audio cut from a parent clip."""

    samples: np.ndarray
    parent_id: str = ""
    offset_s: float = 0.0

    def __post_init__(self):
        if len(self.samples) != SEGMENT_SAMPLES:
            raise EmptyClip(
                f"segment must hold {SEGMENT_SAMPLES} samples, got {len(self.samples)}"
            )


_PCM_SCALES = {8: 128.0, 16: 32768.0, 24: 8388608.0, 32: 2147483648.0}


def _decode_wav(data: bytes) -> tuple[np.ndarray, int]:
    """Parse a RIFF/WAVE blob into (float samples [n, channels], rate).

    Accepts 8/16/24/32-bit integer PCM and 32-bit float, 1-2 channels.
    A hand-rolled parser keeps the error taxonomy exact (container vs codec
    vs truncation) and covers 24-bit, which stdlib `wave` does not.
    """
    if len(data) < 12:
        raise CorruptFile("file shorter than a RIFF header")
    if data[0:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise UnsupportedFormat("not a RIFF/WAVE container")

    fmt = None
    pcm_bytes = None
    pos = 12
    while pos + 8 <= len(data):
        chunk_id = data[pos:pos + 4]
        (chunk_size,) = struct.unpack_from("<I", data, pos + 4)
        body = data[pos + 8:pos + 8 + chunk_size]
        if chunk_id == b"fmt ":
            if len(body) < 16:
                raise CorruptFile("fmt chunk truncated")
            fmt = struct.unpack_from("<HHIIHH", body, 0)
        elif chunk_id == b"data":
            if len(body) < chunk_size:
                raise CorruptFile("data chunk truncated")
            pcm_bytes = body
        pos += 8 + chunk_size + (chunk_size & 1)  # chunks are word-aligned

    if fmt is None:
        raise CorruptFile("missing fmt chunk")
    if pcm_bytes is None:
        raise CorruptFile("missing data chunk")

    audio_format, channels, rate, _, block_align, bits = fmt
    if audio_format == 0xFFFE and len(pcm_bytes) >= 0:
        # WAVE_FORMAT_EXTENSIBLE: true format lives in the fmt extension; we
        # only accept it when the header still describes plain PCM widths.
        audio_format = 1 if bits in (8, 16, 24, 32) else audio_format
    if audio_format not in (1, 3):
        raise UnsupportedFormat(f"compressed or non-PCM codec (format tag {audio_format})")
    if channels not in (1, 2):
        raise UnsupportedFormat(f"{channels} channels; only mono and stereo supported")

    if audio_format == 3:
        if bits != 32:
            raise UnsupportedFormat(f"{bits}-bit float PCM not supported")
        raw = np.frombuffer(pcm_bytes[:len(pcm_bytes) - len(pcm_bytes) % 4], dtype="<f4")
        x = raw.astype(np.float64)
    else:
        if bits not in _PCM_SCALES:
            raise UnsupportedFormat(f"{bits}-bit integer PCM not supported")
        width = bits // 8
        usable = len(pcm_bytes) - len(pcm_bytes) % (width * channels)
        if usable == 0:
            raise CorruptFile("empty or truncated data chunk")
        pcm_bytes = pcm_bytes[:usable]
        if bits == 8:
            x = (np.frombuffer(pcm_bytes, dtype=np.uint8).astype(np.float64) - 128.0)
        elif bits == 16:
            x = np.frombuffer(pcm_bytes, dtype="<i2").astype(np.float64)
        elif bits == 32:
            x = np.frombuffer(pcm_bytes, dtype="<i4").astype(np.float64)
        else:  # 24-bit: widen each triplet to int32
            b = np.frombuffer(pcm_bytes, dtype=np.uint8).reshape(-1, 3)
            x = (
                b[:, 0].astype(np.int32)
                | (b[:, 1].astype(np.int32) << 8)
                | (b[:, 2].astype(np.int8).astype(np.int32) << 16)
            ).astype(np.float64)
        x = x / _PCM_SCALES[bits]

    if channels == 2:
        x = x.reshape(-1, 2)
    else:
        x = x.reshape(-1, 1)
    return x, rate


def load_and_normalize(raw: bytes | str | Path, source_id: str | None = None) -> AudioClip:
    """Decode a WAV file or blob into the canonical clip format.

    Channels are averaged to mono, the result is resampled to 16 kHz with a
    band-limited polyphase filter, and amplitudes are clipped to [-1, 1].
    """
    if isinstance(raw, (str, Path)):
        path = Path(raw)
        data = path.read_bytes()
        if source_id is None:
            source_id = str(path)
    else:
        data = raw
        if source_id is None:
            source_id = "<bytes>"

    x, rate = _decode_wav(data)
    mono = x.mean(axis=1)
    if rate != CANONICAL_RATE:
        g = gcd(rate, CANONICAL_RATE)
        mono = resample_poly(mono, CANONICAL_RATE // g, rate // g)
    # Sinc resampling can overshoot slightly; downstream assumes [-1, 1].
    mono = np.clip(mono, -1.0, 1.0)
    return AudioClip(samples=mono, sample_rate=CANONICAL_RATE, source_id=source_id)


def write_canonical_wav(clip: AudioClip, path: str | Path | None = None) -> bytes:
    """Export a canonical clip as 16-bit LE PCM WAV (debug/interchange)."""
    x = np.clip(clip.samples, -1.0, 1.0)
    pcm = np.round(x * 32767.0).astype("<i2").tobytes()
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF", 36 + len(pcm), b"WAVE",
        b"fmt ", 16, 1, 1, CANONICAL_RATE, CANONICAL_RATE * 2, 2, 16,
        b"data", len(pcm),
    )
    blob = header + pcm
    if path is not None:
        Path(path).write_bytes(blob)
    return blob


def _frame_rms(frames: np.ndarray) -> np.ndarray:
    return np.sqrt(np.mean(frames * frames, axis=1))


def trim_silences(clip: AudioClip) -> AudioClip:
    """Remove every silent run longer than 1 s; shorter pauses are kept.

    Silence is judged on non-overlapping 100 ms frames with RMS below
    -60 dBFS. The trailing partial frame is never classified and is always
    retained, so trimming is idempotent (runs are whole frames and removal
    keeps frame boundaries aligned).
    """
    x = clip.samples
    n_frames = len(x) // SILENCE_FRAME_SAMPLES
    if n_frames == 0:
        return AudioClip(x.copy(), clip.sample_rate, clip.source_id)

    head = x[:n_frames * SILENCE_FRAME_SAMPLES].reshape(n_frames, SILENCE_FRAME_SAMPLES)
    floor = 10.0 ** (SILENCE_FLOOR_DB / 20.0)
    silent = _frame_rms(head) < floor

    max_run_frames = int(MAX_SILENCE_RUN_S * CANONICAL_RATE) // SILENCE_FRAME_SAMPLES
    keep = np.ones(n_frames, dtype=bool)
    i = 0
    while i < n_frames:
        if silent[i]:
            j = i
            while j < n_frames and silent[j]:
                j += 1
            if j - i > max_run_frames:
                keep[i:j] = False
            i = j
        else:
            i += 1

    pieces = [head[k] for k in range(n_frames) if keep[k]]
    pieces.append(x[n_frames * SILENCE_FRAME_SAMPLES:])
    out = np.concatenate(pieces) if pieces else x[:0]
    return AudioClip(out, clip.sample_rate, clip.source_id)


def segment_one_second(clip: AudioClip) -> list[Segment]:
    """Cut a clip into consecutive 1 s segments.

    A trailing partial window covering at least half a second is zero-padded
    to full length; anything shorter is dropped.
    """
    x = clip.samples
    if len(x) == 0:
        raise EmptyClip("cannot segment an empty clip")

    segments = []
    n_full = len(x) // SEGMENT_SAMPLES
    for k in range(n_full):
        segments.append(Segment(
            samples=x[k * SEGMENT_SAMPLES:(k + 1) * SEGMENT_SAMPLES].copy(),
            parent_id=clip.source_id,
            offset_s=float(k),
        ))
    tail = x[n_full * SEGMENT_SAMPLES:]
    if len(tail) >= SEGMENT_SAMPLES // 2:
        padded = np.zeros(SEGMENT_SAMPLES, dtype=x.dtype)
        padded[:len(tail)] = tail
        segments.append(Segment(samples=padded, parent_id=clip.source_id,
                                offset_s=float(n_full)))
    return segments


def loudness_db(segment: Segment | np.ndarray) -> float:
    """Average loudness in dBFS (full scale = 1.0), floored at -120 dBFS."""
    x = segment.samples if isinstance(segment, Segment) else segment
    rms = math.sqrt(float(np.mean(x * x)))
    if rms <= 0.0:
        return LOUDNESS_FLOOR_DB
    return max(20.0 * math.log10(rms), LOUDNESS_FLOOR_DB)
