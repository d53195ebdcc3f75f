"""HTTP service wrapping the deformation-report toolkit."""
