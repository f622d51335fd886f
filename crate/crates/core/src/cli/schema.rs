//! The problem-file schema, printable via `abfix schema`.

/// Schema and constraints for problem files, as commented TOML.
pub const SCHEMA: &str = r#"# abfix problem file (strict TOML: unknown fields are rejected)

version = "1"          # required; format version
seed = 0               # optional; u64 RNG seed for all sampled operations
                       # (the CLI flag --seed overrides it)

[output]               # optional; file names relative to --out-dir
summary = "summary.json"
trace = "trace.csv"        # written by solve-* tasks
solution = "solution.csv"  # written by solve-fredholm / solve-ode

# ---------------------------------------------------------------------------
# Exactly ONE of the following task tables must be present.
# ---------------------------------------------------------------------------

# Check nonnegativity, identity, symmetry, and the relaxed triangle
# inequality G(x,y) <= alpha*G(x,z) + beta*G(z,y) on sampled triples.
[verify-metric]
space = "abs"          # abs | abs-squared | sup-grid
interval = [0.0, 1.0]  # scalar spaces: exactly one of interval / points
#points = [0.0, 1.0, 2.0]
#grid = { lo = 0.0, hi = 1.0, cells = 50 }   # sup-grid only
#values = [-1.0, 1.0]                        # sup-grid sampling range
alpha = 1.0            # >= 1
beta = 1.0             # >= 1
n-triples = 10000      # >= 1; small finite domains are enumerated instead
#witnesses = [[0.0, 2.0, 1.0]]  # extra scalar triples checked verbatim

# Strongest label consistent with sampled evidence:
# metric, strong-b, b-metric, alpha-beta, or unknown.
[classify]
space = "abs-squared"
interval = [0.0, 2.0]
n-triples = 10000
#max-constant = 10.0   # estimated constants above this reject a label
#alpha-grid = [1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0]

# Fit contraction constants to a built-in self-map.
[estimate-contraction]
map = "x/4"
distance = "abs"       # abs | abs-squared
interval = [0.0, 1.0]
kind = "banach"        # banach | alpha-beta | weak-alpha-beta | kannan | reich
n-pairs = 10000

# Picard-iterate a built-in scalar self-map.
[solve-map]
map = "x/4"
distance = "abs"
interval = [0.0, 1.0]
alpha = 2.0            # optional claimed triangle constants (default 1, 1)
beta = 1.0
kind = "banach"
k = 0.25               # banach: k in [0, 1)
#xi1 = 0.25            # alpha-beta / weak-alpha-beta (with xi2)
#xi2 = 0.0             #   alpha-beta additionally needs xi1 + 2*xi2 < 1
#lambda = 0.3          # kannan: lambda in [0, 0.5)
#xi3 = 0.1             # reich (with xi1, xi2): xi1 + xi2 + xi3 < 1
x0 = 1.0               # starting point, inside the interval
tol = 1e-10            # optional; > 0 (default 1e-10)
max-iter = 10000       # optional; >= 1 (default 10000)
#mode = "a-posteriori" # or "a-priori-if-available"

# Solve u(s) = integral over [m, n] of F(s, t, u(t)) dt.
[solve-fredholm]
kernel = "fredholm-linear"   # F(s,t,u) = s + s*t*u/2
m = 0.0
n = 1.0                # m < n
cells = 1000           # grid cells (nodes = cells + 1)
quadrature = "trapezoid"     # or "simpson" (needs even cells)
#lambda = 0.5          # claimed kernel Lipschitz constant in u;
                       # estimated by sampling when absent
tol = 1e-10
max-iter = 10000
#x0-constant = 0.0     # constant starting iterate (default: zero function)

# Solve u'(s) = f(s, u(s)), u(s0) = r0 on [s0 - h, s0 + h].
[solve-ode]
rhs = "ode-decay"      # f = -u; or "ode-poly": f = 2s
s0 = 0.0
r0 = 1.0
h = 0.5                # half-width, > 0
nodes-per-side = 500
#lambda = 1.0          # claimed Lipschitz constant of f in u
tol = 1e-10
max-iter = 10000

# ---------------------------------------------------------------------------
# Outputs
# ---------------------------------------------------------------------------
# summary.json   one JSON object: version, task, seed, strict, inputs echo,
#                and a task-specific result block (fixed keys, sorted; no
#                timestamps, so identical file + seed => identical bytes).
# trace.csv      iteration,residual,a_priori_bound -- the bound column is
#                empty when beta * K >= 1 makes the bound unavailable.
# solution.csv   node,value rows of the converged grid function.
#
# Exit codes: 0 success, 2 validation/parse failure, 3 divergence or violated
# solver precondition (--strict), 4 evaluation error.
"#;
