"""Hand-written files conforming to the documented cavicool schemas."""

PARAM_LINES = """\
# nu=1.0
# gamma=0.1
# kappa=10.0
# Omega=0.03
# g_tilde=7.0
# phi=0.7853981633974483
# theta_L=0.7853981633974483
# theta_c=0.7853981633974483
# Delta=0.0
# delta_c=0.0
# eta=0.1
# alpha=0.4
"""


def sweep_csv(nx=3, ny=2, heat=((0, 2),)):
    lines = ["# schema=cavicool.sweep.v1", PARAM_LINES.rstrip(),
             "delta_c,Delta,n_st,W,status"]
    for i in range(ny):
        for j in range(nx):
            dc = 10.0 + 5.0 * j
            D = -1.0 + 1.0 * i
            if (i, j) in heat:
                lines.append(f"{dc},{D},,,heating")
            else:
                lines.append(f"{dc},{D},{0.01 * (1 + i + j)},{1e-4 * (1 + j)},ok")
    return "\n".join(lines) + "\n"


def roots_csv():
    return ("# schema=cavicool.roots.v1\n" + PARAM_LINES
            + "branch,delta_c,Delta,residual\n"
            + "plus,20.0,-0.5,1e-15\n"
            + "minus,12.5,0.5,2e-15\n")


def delta_opt_csv():
    return ("# schema=cavicool.delta_opt.v1\n" + PARAM_LINES
            + "Delta,delta_opt,status\n"
            + "-1.0,,pole\n"
            + "-0.5,19.0,ok\n"
            + "0.0,14.0,ok\n"
            + "0.5,11.0,ok\n")


def compare_csv():
    return ("# schema=cavicool.sideband_compare.v1\n" + PARAM_LINES
            + "g_tilde,n_st_cavity,W_cavity,n_st_sideband,W_sideband,status\n"
            + "1.0,,-1e-5,0.0026,0.00018,heating\n"
            + "5.0,0.01,1e-4,0.0026,0.00018,ok\n"
            + "9.0,0.002,4e-4,0.0026,0.00018,ok\n")
