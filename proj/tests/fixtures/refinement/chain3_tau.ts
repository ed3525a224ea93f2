# chain3 with an internal self-loop at the middle state
states: q0 q1 q2
initial: q0
alphabet: a b t
q0 a q1
q1 t q1
q1 b q2
