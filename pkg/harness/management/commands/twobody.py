from harness.runner import ExperimentCommand


class Command(ExperimentCommand):
    help = "Radial two-body energies against the analytic bracket, plus G(s, g) special values."
    command = "twobody"
