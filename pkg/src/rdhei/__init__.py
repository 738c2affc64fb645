"""Reversible data hiding in encrypted grayscale images.

Typical flow::

    container = vacate(img)                          # content owner
    enc = encrypt_image(container.serialize(), key_image)
    marked = embed(enc, payload, key_data)           # data hider
    extract(marked, key_data)                        # receiver, data key only
    recover(marked, key_image)                       # receiver, image key only
"""
from .bitplane import PlaneStack, decompose, plane_slice, recompose
from .bpr import BlockGeometry, ScanType, inverse_rearrange, rearrange
from .bsc import CodecParams, compress_plane, decode, encode
from .container import CapacityReport, Container, capacity, parse, vacate
from .crypto import encrypt_image, encrypt_payload, keystream_bytes, parse_key
from .embed import embed, extract, recover, recover_and_extract
from .errors import (
    CapacityExceeded,
    CorruptionError,
    FormatError,
    NotEmbeddable,
    RDHError,
    TruncatedStreamError,
)
from .metrics import embedding_rate, psnr, ssim
from .predictor import ErrorImage, error_to_planestack, med_predict, predict_image, reconstruct_image

__version__ = "0.1.0"

__all__ = [
    "BlockGeometry", "CapacityExceeded", "CapacityReport", "CodecParams", "Container",
    "CorruptionError", "ErrorImage", "FormatError", "NotEmbeddable", "PlaneStack",
    "RDHError", "ScanType", "TruncatedStreamError", "capacity", "compress_plane",
    "decode", "decompose", "embed", "embedding_rate", "encode", "encrypt_image",
    "encrypt_payload", "error_to_planestack", "extract", "inverse_rearrange",
    "keystream_bytes", "med_predict", "parse", "parse_key", "plane_slice", "predict_image",
    "psnr", "rearrange", "recompose", "reconstruct_image", "recover", "recover_and_extract",
    "ssim", "vacate",
]
