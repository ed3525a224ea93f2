# base plus an old-action step the abstract system cannot follow
states: s0 s1 s2
initial: s0
alphabet: a b c
s0 a s1
s0 b s2
s1 a s2
s1 c s0
s2 c s0
