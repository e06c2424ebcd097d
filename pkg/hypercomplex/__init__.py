"""hypercomplex package - algebra, resolvent and verification library behind the CLI tools."""
