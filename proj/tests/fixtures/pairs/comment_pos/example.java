// read the header
String h = in.readLine();
