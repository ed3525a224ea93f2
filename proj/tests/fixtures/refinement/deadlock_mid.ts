# s1 stops here; its a-partner s3 in the top system stops too
states: s0 s1 s2 s3
initial: s0
alphabet: a b
s0 b s0
s0 b s2
s2 a s1
s2 a s2
s2 b s1
