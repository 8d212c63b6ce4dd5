from ._eoflex import (
    CodeError,
    CodeParams,
    count_decode_xors,
    count_encode_xors,
    decode,
    encode,
    encode_formula,
    mds_check,
    reconstruct,
    shard_file,
    two_info_recoverable,
    update_complexity,
    validate_params,
)

__all__ = [
    "CodeError",
    "CodeParams",
    "count_decode_xors",
    "count_encode_xors",
    "decode",
    "encode",
    "encode_formula",
    "mds_check",
    "reconstruct",
    "shard_file",
    "two_info_recoverable",
    "update_complexity",
    "validate_params",
]
