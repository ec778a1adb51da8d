"""
End-to-end certification from the command line
===============================================

``kinkforge certify`` runs wells, connect, verify, spectrum and coercivity
and writes one JSON report. The same entry point is callable in-process.
"""

# %%
import io
import json

from kinkforge.cli_report import run

out = io.StringIO()
code = run(["certify", "--preset", "product:-1,i,1", "--pair", "0", "1"], stdout=out)
report = json.loads(out.getvalue()) if code in (0, 1) else None
print("exit code:", code)
if report:
    print("wells:", [w["location"] for w in report["wells"]["wells"]])
    print("energy:", report["orbit"]["energy"], "closed form:", report["orbit"]["closed_form_energy"])
    print("theta:", [round(t, 6) for t in report["spectral"]["theta"]])
    print("checks:", report["checks"])

# %%
# Failures are reported through exit codes rather than tracebacks.
err = io.StringIO()
print(run(["connect", "--preset", "triple", "--pair", "0", "2"], stdout=io.StringIO(), stderr=err), err.getvalue())
err = io.StringIO()
print(run(["certify", "--preset", "product:1,1"], stdout=io.StringIO(), stderr=err), err.getvalue())
