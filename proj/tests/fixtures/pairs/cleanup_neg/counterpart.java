FileInputStream in = new FileInputStream(path);
int b = in.read();
process(b);
in.close();
