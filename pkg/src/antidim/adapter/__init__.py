"""
Adapter Layer - Boundary to Files, Datasets and Output Formats

Layer Structure:
----------------
- protocols.py: GraphSource, Parser, DistanceBackend, Storage (and SetCoverSolver)
- interface/: graph sources (edge-list files, in-memory text, bundled datasets)
- parser/: the edge-list codec
- distances.py, set_cover.py: interchangeable computation backends
- storage/: record conversion and JSON / CSV / text result storage
"""
