"""Self-hosted documentation service for the chronological trajectories of artworks."""

__version__ = "0.1.0"
