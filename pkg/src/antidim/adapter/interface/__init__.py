"""
Graph Sources

Implementations of the GraphSource protocol. ``datasets.resolve_source`` turns a
CLI ``--input`` value (a path or ``builtin:NAME``) into one of them.
"""
