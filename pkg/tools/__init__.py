"""tools package - one module per CLI command, plus output_writer, the single artifact sink."""
