from hecke_identity.verification.hecke import HeckeReport, sweep_verify, verify_hecke_identity

__all__ = ["HeckeReport", "sweep_verify", "verify_hecke_identity"]
