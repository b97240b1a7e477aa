"""Plane-graph routines: embeddings, radial distance, disk covers,
boundary layering and list-coloring extension."""

from .embedding import NonplanarCertificate, RotationEmbedding, planar_embed, trace_face
from .layering import Layering, boundary_layering
from .listcolor import precolored_face_extend, thomassen_extend
from .metric import DiskCover, RadialMetric, greedy_disk_cover, merge_disk_cover, radial_distance

__all__ = [
    "DiskCover", "Layering", "NonplanarCertificate", "RadialMetric", "RotationEmbedding", "boundary_layering",
    "greedy_disk_cover", "merge_disk_cover", "planar_embed", "precolored_face_extend", "radial_distance",
    "thomassen_extend", "trace_face",
]
