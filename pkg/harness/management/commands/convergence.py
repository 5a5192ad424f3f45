from harness.runner import ExperimentCommand


class Command(ExperimentCommand):
    help = "Convergence study along a scaling schedule (also g-scan, omega-scan, nll-suite, gammastar-scan)."
    command = "convergence"
