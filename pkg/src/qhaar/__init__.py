"""Exact Haar state computation on the quantum group O(SL_q(3))."""
