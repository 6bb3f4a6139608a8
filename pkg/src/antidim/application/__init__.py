"""Application Layer - Use Cases

Use cases wire the domain algorithms into the operations the CLI exposes. They
depend on adapter protocols, never on concrete adapters.

Dependencies:
-------------
- Depends on: Domain layer (model/), adapter protocols
- Depended upon by: composition/
"""
