"""Drive the command-line tool: keygen, sign, verify, vectors, inspect.

Run:  python demos/05_cli_roundtrip.py
"""
import pathlib
import tempfile

from aris.cli import main

d = pathlib.Path(tempfile.mkdtemp())
(d / "msg.txt").write_text("open valve 3\n")

main(["keygen", "--params", "embedded", "--out-prefix", str(d / "dev"), "--seed-hex", "00" * 16])
main(["inspect", str(d / "dev.pk")])
main(["sign", "--key", str(d / "dev.sk"), "--in", str(d / "msg.txt"), "--out", str(d / "msg.sig")])
code = main(["verify", "--pub", str(d / "dev.pk"), "--in", str(d / "msg.txt"), "--sig", str(d / "msg.sig")])
print("exit code", code)

(d / "msg.txt").write_text("open valve 4\n")
code = main(["verify", "--pub", str(d / "dev.pk"), "--in", str(d / "msg.txt"), "--sig", str(d / "msg.sig")])
print("exit code after tampering", code)

main(["vectors", "--params", "embedded", "--count", "2", "--seed", "demo", "--group", "toy101"])
