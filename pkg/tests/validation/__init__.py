"""Real-data reproductions driven by YAML test cases."""
