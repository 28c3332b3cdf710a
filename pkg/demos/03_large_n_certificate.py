"""LP-free certificate at n = 2^61.

Builds the quantized Chebyshev sequence at Delta = sqrt(alpha k n), checks
every size assumption and sequence condition, and compares the weighted
binomial tail against the right-hand side in the log domain.
"""
import argparse
import json

from kwisecover.certify import CertificateParams, cube_root_k, translated_certificate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=61, help="n = 2^m")
    ap.add_argument("--k", type=int, help="default: floor(n^(1/3)/log^2 n)")
    ap.add_argument("--alpha", type=float, default=0.93)
    args = ap.parse_args()
    n = 2**args.m
    k = args.k or cube_root_k(n)
    cert = translated_certificate(CertificateParams(n, k, alpha=args.alpha))
    for c in cert.conditions:
        print(f"  {c.name:>4} {'ok ' if c.passed else 'FAIL'} slack={c.slack:.6g}  {c.detail}")
    print(f"W has {len(cert.W)} points, R(W)={cert.R_W}, min gap t={cert.t}, p={cert.p_offset}")
    print(f"log nu = {cert.nu.get('log')}, log rhs = {cert.rhs.get('log')}")
    print(f"verdict: {cert.verdict} {cert.reason}")
    print(json.dumps({"n": n, "k": k, "verdict": cert.verdict, "log_margin": cert.nu.get("log_margin")}))


if __name__ == "__main__":
    main()
