#!/usr/bin/env python3
"""Solve an LP-format model with HiGHS and write a plain "name value" solution.

usage: highs_solve.py MODEL.lp SOLUTION.txt TIME_LIMIT_S
"""
import sys

import highspy


def main(argv):
    if len(argv) != 4:
        sys.stderr.write(__doc__)
        return 2
    model_path, solution_path, time_limit = argv[1], argv[2], float(argv[3])

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("time_limit", time_limit)
    if h.readModel(model_path) != highspy.HighsStatus.kOk:
        sys.stderr.write("could not read %s\n" % model_path)
        return 1
    h.run()

    status = h.getModelStatus()
    info = h.getInfo()
    has_point = info.primal_solution_status == 2  # feasible
    if status == highspy.HighsModelStatus.kOptimal:
        word = "Optimal"
    elif status == highspy.HighsModelStatus.kInfeasible:
        word = "Infeasible"
    elif status == highspy.HighsModelStatus.kTimeLimit:
        word = "Feasible" if has_point else "TimeLimit"
    else:
        word = "Feasible" if has_point else "Error"

    lines = ["# status: %s" % word]
    if word in ("Optimal", "Feasible"):
        lines.append("# objective: %r" % info.objective_function_value)
        lp = h.getLp()
        values = h.getSolution().col_value
        for name, value in zip(lp.col_names_, values):
            lines.append("%s %r" % (name, value))
    with open(solution_path, "w") as out:
        out.write("\n".join(lines) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
