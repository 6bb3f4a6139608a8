"""
Composition Layer - Configuration and Wiring

The outermost layer: it knows every concrete implementation and wires them into
the use cases. Nothing else imports from here except the CLI.

Files:
------
- context.py: Context (which implementation fills each slot, runtime settings)
  and ClassImportPath (dotted-string class loading)
- experiments.py: entry points that wire adapters into each use case
"""
