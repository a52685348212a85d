FileInputStream in = new FileInputStream(path);
int b = in.read();
in.close();
process(b);
