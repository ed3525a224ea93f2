# base with the a step split into a, then an internal step t
states: s0 s1 s2 s5
initial: s0
alphabet: a b c t
s0 a s5
s5 t s1
s0 b s2
s1 c s0
s2 c s0
