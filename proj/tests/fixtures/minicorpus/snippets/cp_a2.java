package net.files;

import java.io.*;

public class Pipe {
    /* See https://stackoverflow.com/questions/100/how-to-copy-a-stream */
    public static long copy(InputStream in, OutputStream out, int bufferSize) throws IOException {
        if (in == null || out == null || bufferSize <= 0) {
            throw new IllegalArgumentException("bad copy arguments: " + bufferSize);
        }
        byte[] buffer = new byte[bufferSize];
        long total = 0;
        int read = in.read(buffer);
        while (read != -1) {
            out.write(buffer, 0, read);
            total = total + read;
            read = in.read(buffer);
        }
        if (out != null) {
            out.flush();
        }
        return total;
    }
}
