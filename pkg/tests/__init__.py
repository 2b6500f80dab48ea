"""Test suite for robust-lattice-parser."""
