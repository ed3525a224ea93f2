# base without the b branch
states: s0 s1 s2
initial: s0
alphabet: a b c
s0 a s1
s1 c s0
s2 c s0
